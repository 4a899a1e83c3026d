// Copyright 2026 The Friendlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "friendlink/bloom/bloom_filter.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <string>

#include "friendlink/bloom/murmur3.h"
#include "friendlink/drbg.h"
#include "testing/stats.h"

namespace friendlink {
namespace {

using ::testing::Each;
using ::testing::Lt;

BloomParams Paper() { return *DeriveParams(1000, 0.02); }

Bytes Element(uint64_t i) {
  Bytes b(16);
  for (int j = 0; j < 8; ++j) b[j] = static_cast<uint8_t>(i >> (8 * j));
  b[15] = 0xA5;
  return b;
}

TEST(Murmur3, MatchesReferenceVectors) {
  // Reference outputs from the canonical MurmurHash3_x86_32 (via mmh3).
  EXPECT_EQ(Murmur3_32(AsBytes(""), 0), 0u);
  EXPECT_EQ(Murmur3_32(AsBytes(""), 1), 0x514e28b7u);
  EXPECT_EQ(Murmur3_32(Bytes(4, 0), 0), 0x2362f9deu);
  EXPECT_EQ(Murmur3_32(AsBytes("aaaa"), 0x9747b28c), 0x5a97808au);
  EXPECT_EQ(Murmur3_32(AsBytes("abc"), 0), 0xb3dd93fau);
  EXPECT_EQ(Murmur3_32(AsBytes("Hello, world!"), 0x9747b28c), 0x24884cbau);
  EXPECT_EQ(Murmur3_32(AsBytes("The quick brown fox jumps over the lazy dog"), 0x9747b28c),
            0x2fa826cdu);
}

struct SizingCase {
  uint32_t n;
  double fpp;
  uint32_t m_bits;
  uint32_t k_hashes;
};

// Expected values evaluated with mpmath at 50 significant digits.
class DeriveParamsTest : public ::testing::TestWithParam<SizingCase> {};

TEST_P(DeriveParamsTest, MatchesHighPrecisionOracle) {
  const SizingCase& c = GetParam();
  auto params = DeriveParams(c.n, c.fpp);
  ASSERT_TRUE(params.ok()) << params.status();
  EXPECT_EQ(params->m_bits, c.m_bits);
  EXPECT_EQ(params->k_hashes, c.k_hashes);
}

INSTANTIATE_TEST_SUITE_P(Oracle, DeriveParamsTest,
                         ::testing::Values(SizingCase{1000, 0.02, 8143, 6},
                                           SizingCase{1, 0.5, 2, 1},
                                           SizingCase{100, 0.02, 815, 6},
                                           SizingCase{1000, 0.01, 9586, 7},
                                           SizingCase{1000, 0.05, 6236, 4},
                                           SizingCase{10, 0.1, 48, 3}));

TEST(DeriveParams, PaperSizingGivesThousandEighteenBytePayload) {
  BloomParams p = Paper();
  EXPECT_EQ(p.payload_bytes(), 1018u);
  EXPECT_EQ(BloomFilter(p).Serialize().size(), 1026u);
}

TEST(DeriveParams, RejectsOutOfDomainInputs) {
  EXPECT_FALSE(DeriveParams(0, 0.02).ok());
  EXPECT_FALSE(DeriveParams(10, 0.0).ok());
  EXPECT_FALSE(DeriveParams(10, 1.0).ok());
  EXPECT_FALSE(DeriveParams(10, -0.5).ok());
  EXPECT_FALSE(DeriveParams(10, 1.5).ok());
}

TEST(DeriveParams, LengthStrictlyDecreasesAsFppGrows) {
  uint32_t previous = UINT32_MAX;
  for (double fpp = 0.001; fpp < 0.9; fpp += 0.01) {
    uint32_t m = DeriveParams(1000, fpp)->m_bits;
    EXPECT_LT(m, previous) << "fpp=" << fpp;
    previous = m;
  }
}

TEST(BloomFilter, EmptyFilterContainsNothing) {
  BloomFilter f(Paper());
  for (uint64_t i = 0; i < 100; ++i) EXPECT_FALSE(f.Contains(Element(i)));
}

TEST(BloomFilter, InsertSetsAtMostKBitsAndIsIdempotent) {
  BloomFilter f(Paper());
  const BloomFilter original = f;
  BloomFilter once = f.Insert(Element(7));
  EXPECT_EQ(f, original);
  EXPECT_TRUE(once.Contains(Element(7)));
  EXPECT_LE(once.Popcount(), Paper().k_hashes);
  EXPECT_EQ(once.Insert(Element(7)), once);
}

TEST(BloomFilter, PopcountBoundedByKTimesInserted) {
  BloomFilter f(Paper());
  for (uint64_t i = 0; i < 500; ++i) {
    f.InsertInPlace(Element(i));
    ASSERT_LE(f.Popcount(), Paper().k_hashes * (i + 1));
  }
}

TEST(BloomFilter, NoFalseNegatives) {
  Drbg rng = Drbg::FromSeed(11);
  BloomFilter f(Paper());
  std::vector<Bytes> inserted;
  for (int i = 0; i < 10000; ++i) {
    inserted.push_back(rng.RandomBytes(1 + rng.Uniform(40)));
    f.InsertInPlace(inserted.back());
  }
  for (const Bytes& e : inserted) ASSERT_TRUE(f.Contains(e));
}

TEST(BloomFilter, EmpiricalFalsePositiveRateNearTwoPercent) {
  Drbg rng = Drbg::FromSeed(12);
  BloomFilter f(Paper());
  for (int i = 0; i < 1000; ++i) f.InsertInPlace(rng.RandomBytes(16));
  int hits = 0;
  constexpr int kProbes = 100000;
  for (int i = 0; i < kProbes; ++i) {
    Bytes probe = rng.RandomBytes(17);  // different length, never inserted
    hits += f.Contains(probe);
  }
  const double rate = static_cast<double>(hits) / kProbes;
  EXPECT_GE(rate, 0.01);
  EXPECT_LE(rate, 0.03);
}

TEST(HashPositions, DeterministicAndInRange) {
  BloomParams p = Paper();
  for (uint64_t i = 0; i < 1000; ++i) {
    auto a = HashPositions(Element(i), p);
    EXPECT_EQ(a, HashPositions(Element(i), p));
    EXPECT_EQ(a.size(), p.k_hashes);
    EXPECT_THAT(a, Each(Lt(p.m_bits)));
  }
}

TEST(HashPositions, UniformByChiSquare) {
  BloomParams p = Paper();
  Drbg rng = Drbg::FromSeed(13);
  std::vector<uint64_t> buckets(64, 0);
  for (int i = 0; i < 10000; ++i) {
    for (uint32_t pos : HashPositions(rng.RandomBytes(16), p)) {
      ++buckets[static_cast<uint64_t>(pos) * 64 / p.m_bits];
    }
  }
  EXPECT_LT(testing::ChiSquareUniform(buckets), testing::kChiSquare99Dof63);
}

TEST(XorMask, InvolutionAndIdentity) {
  Drbg rng = Drbg::FromSeed(14);
  BloomParams p = Paper();
  BloomFilter f(p);
  for (int i = 0; i < 50; ++i) f.InsertInPlace(rng.RandomBytes(16));
  Bytes raw = rng.RandomBytes(p.payload_bytes());
  raw.back() &= static_cast<uint8_t>((1u << (p.m_bits % 8)) - 1);
  BitArray mask = *BitArray::FromBytes(p.m_bits, raw);

  auto once = f.XorMask(mask);
  ASSERT_TRUE(once.ok());
  EXPECT_NE(*once, f);
  EXPECT_EQ(*once->XorMask(mask), f);
  EXPECT_EQ(*f.XorMask(BitArray(p.m_bits)), f);
  // BF_c xor BF_c+ gives back the mask.
  EXPECT_EQ(*f.bits().Xor(once->bits()), mask);
}

TEST(XorMask, RejectsLengthMismatch) {
  BloomFilter f(Paper());
  EXPECT_FALSE(f.XorMask(BitArray(100)).ok());
}

TEST(Serialization, RoundTripsRandomFilters) {
  Drbg rng = Drbg::FromSeed(15);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = DeriveParams(1 + rng.Uniform(2000), 0.001 + 0.3 * rng.UnitDouble());
    ASSERT_TRUE(p.ok());
    BloomFilter f(*p);
    for (uint64_t i = 0, n = rng.Uniform(200); i < n; ++i) f.InsertInPlace(rng.RandomBytes(8));
    Bytes wire = f.Serialize();
    ASSERT_EQ(wire.size(), BloomFilter::kHeaderBytes + p->payload_bytes());
    auto back = BloomFilter::Deserialize(wire);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, f);
  }
}

TEST(Serialization, LayoutIsLittleEndianHeaderThenBits) {
  BloomParams p{.n_items = 1, .fpp = 0.5, .m_bits = 10, .k_hashes = 1};
  BloomFilter f(p);
  Bytes wire = f.Serialize();
  EXPECT_EQ(wire, (Bytes{10, 0, 0, 0, 1, 0, 0, 0, 0, 0}));
}

TEST(Serialization, RejectsMalformedInput) {
  BloomFilter f(Paper());
  Bytes wire = f.Serialize();
  EXPECT_FALSE(BloomFilter::Deserialize(ByteSpan(wire).first(wire.size() - 1)).ok());
  EXPECT_FALSE(BloomFilter::Deserialize(ByteSpan(wire).first(4)).ok());
  Bytes padded = wire;
  padded.back() |= 0x80;  // 8143 % 8 == 7, so bit 7 of the last byte is padding
  EXPECT_FALSE(BloomFilter::Deserialize(padded).ok());
  Bytes zero_k = wire;
  zero_k[4] = 0;
  EXPECT_FALSE(BloomFilter::Deserialize(zero_k).ok());
}

}  // namespace
}  // namespace friendlink
