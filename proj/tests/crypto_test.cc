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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <set>

#include "friendlink/crypto/asymmetric.h"
#include "friendlink/crypto/certificate.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/drbg.h"

namespace friendlink {
namespace {

class CryptoTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Drbg rng = Drbg::FromSeed(1);
    alice_ = new KeyPair(KeyPair::Generate(rng));
    bob_ = new KeyPair(KeyPair::Generate(rng));
  }
  static void TearDownTestSuite() {
    delete alice_;
    delete bob_;
  }

  static KeyPair* alice_;
  static KeyPair* bob_;
};

KeyPair* CryptoTest::alice_ = nullptr;
KeyPair* CryptoTest::bob_ = nullptr;

TEST(Symmetric, NormalMessageBodyIs176Bytes) {
  Drbg rng = Drbg::FromSeed(2);
  SymmetricKey key = SymmetricKey::Random(rng);
  Bytes ct = SymEncrypt(key, Bytes(160, 'x'));
  EXPECT_EQ(ct.size() - kSymTagBytes, 176u);
  EXPECT_EQ(SymBodyLength(160), 176u);
}

TEST(Symmetric, EmptyPlaintextIsOneFullPaddingBlock) {
  Drbg rng = Drbg::FromSeed(3);
  SymmetricKey key = SymmetricKey::Random(rng);
  Bytes ct = SymEncrypt(key, {});
  EXPECT_EQ(ct.size(), 16u + kSymTagBytes);
  auto pt = SymDecrypt(key, ct);
  ASSERT_TRUE(pt.ok());
  EXPECT_TRUE(pt->empty());
}

TEST(Symmetric, LengthFormulaHoldsForEveryLengthUpTo10000) {
  Drbg rng = Drbg::FromSeed(4);
  SymmetricKey key = SymmetricKey::Random(rng);
  Bytes msg = rng.RandomBytes(10000);
  for (size_t len = 0; len <= 10000; ++len) {
    Bytes ct = SymEncrypt(key, ByteSpan(msg).first(len));
    ASSERT_EQ(ct.size(), 16 * (len / 16 + 1) + kSymTagBytes) << "len=" << len;
  }
}

TEST(Symmetric, RoundTripsRandomMessages) {
  Drbg rng = Drbg::FromSeed(5);
  for (int i = 0; i < 1000; ++i) {
    SymmetricKey key = SymmetricKey::Random(rng);
    Bytes msg = rng.RandomBytes(rng.Uniform(300));
    auto pt = SymDecrypt(key, SymEncrypt(key, msg));
    ASSERT_TRUE(pt.ok()) << pt.status();
    ASSERT_EQ(*pt, msg);
  }
}

TEST(Symmetric, WrongKeyIsIntegrityFailure) {
  Drbg rng = Drbg::FromSeed(6);
  for (int i = 0; i < 200; ++i) {
    SymmetricKey key = SymmetricKey::Random(rng);
    SymmetricKey other = SymmetricKey::Random(rng);
    auto pt = SymDecrypt(other, SymEncrypt(key, rng.RandomBytes(1 + rng.Uniform(200))));
    ASSERT_FALSE(pt.ok());
    EXPECT_TRUE(IsIntegrityFailure(pt.status()));
  }
}

TEST(Symmetric, AnyFlippedBitIsIntegrityFailure) {
  Drbg rng = Drbg::FromSeed(7);
  SymmetricKey key = SymmetricKey::Random(rng);
  Bytes ct = SymEncrypt(key, rng.RandomBytes(50));
  for (size_t bit = 0; bit < ct.size() * 8; ++bit) {
    Bytes bad = ct;
    bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    auto pt = SymDecrypt(key, bad);
    ASSERT_FALSE(pt.ok()) << "bit " << bit;
    EXPECT_TRUE(IsIntegrityFailure(pt.status()));
  }
}

TEST(Symmetric, MalformedLengthRejected) {
  Drbg rng = Drbg::FromSeed(8);
  SymmetricKey key = SymmetricKey::Random(rng);
  EXPECT_FALSE(SymDecrypt(key, Bytes(31)).ok());
  EXPECT_FALSE(SymDecrypt(key, Bytes(16)).ok());
}

TEST_F(CryptoTest, WrapUnwrapRoundTripIs128Bytes) {
  Drbg rng = Drbg::FromSeed(9);
  SymmetricKey key = SymmetricKey::Random(rng);
  Bytes wrapped = WrapKey(bob_->public_key(), key);
  EXPECT_EQ(wrapped.size(), 128u);
  auto back = bob_->UnwrapKey(wrapped);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, key);
}

TEST_F(CryptoTest, UnwrapWithWrongPrivateKeyFails) {
  Drbg rng = Drbg::FromSeed(10);
  Bytes wrapped = WrapKey(bob_->public_key(), SymmetricKey::Random(rng));
  EXPECT_FALSE(alice_->UnwrapKey(wrapped).ok());
}

TEST(KeyPair, SeededGenerationIsReproducibleAndDrawsAreDistinct) {
  Drbg a = Drbg::FromSeed(42);
  Drbg b = Drbg::FromSeed(42);
  EXPECT_EQ(KeyPair::Generate(a).public_key(), KeyPair::Generate(b).public_key());

  Drbg rng = Drbg::FromSeed(43);
  std::set<std::array<uint8_t, kPublicKeyWireBytes>> seen;
  for (int i = 0; i < 100; ++i) seen.insert(KeyPair::Generate(rng).public_key().wire());
  EXPECT_EQ(seen.size(), 100u);
}

TEST_F(CryptoTest, PublicKeyWireRoundTrips) {
  auto parsed = PublicKey::Parse(alice_->public_key().wire());
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(*parsed, alice_->public_key());
  Bytes bad(alice_->public_key().wire().begin(), alice_->public_key().wire().end());
  bad.back() = 1;
  EXPECT_FALSE(PublicKey::Parse(bad).ok());
  EXPECT_FALSE(PublicKey::Parse(Bytes(10)).ok());
}

CompositeId Subject(uint8_t fill) {
  CompositeId id;
  id.digest.fill(fill);
  return id;
}

TEST_F(CryptoTest, CertificateIs481BytesAndRoundTrips) {
  auto cert = MakeCertificate(*alice_, Subject(0xAB), 100, 200);
  ASSERT_TRUE(cert.ok());
  Bytes wire = cert->Serialize();
  EXPECT_EQ(wire.size(), 481u);
  auto back = Certificate::Parse(wire);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->Serialize(), wire);
  EXPECT_EQ(VerifyCertificate(*back, 150), CertStatus::kValid);
}

TEST_F(CryptoTest, CertificateWindow) {
  auto cert = MakeCertificate(*alice_, Subject(1), 100, 200);
  ASSERT_TRUE(cert.ok());
  EXPECT_EQ(VerifyCertificate(*cert, 100), CertStatus::kValid);
  EXPECT_EQ(VerifyCertificate(*cert, 200), CertStatus::kValid);
  EXPECT_EQ(VerifyCertificate(*cert, 201), CertStatus::kExpired);
  EXPECT_EQ(VerifyCertificate(*cert, 99), CertStatus::kExpired);
  EXPECT_FALSE(MakeCertificate(*alice_, Subject(1), 200, 200).ok());
  EXPECT_FALSE(MakeCertificate(*alice_, Subject(1), 300, 200).ok());
}

TEST_F(CryptoTest, TamperedSubjectIsBadSignature) {
  auto cert = MakeCertificate(*alice_, Subject(1), 100, 200);
  ASSERT_TRUE(cert.ok());
  cert->subject.digest[3] ^= 1;
  EXPECT_EQ(VerifyCertificate(*cert, 150), CertStatus::kBadSignature);
}

TEST_F(CryptoTest, SwappedKeyIsBadSignature) {
  auto cert = MakeCertificate(*alice_, Subject(1), 100, 200);
  ASSERT_TRUE(cert.ok());
  cert->public_key = bob_->public_key();
  EXPECT_EQ(VerifyCertificate(*cert, 150), CertStatus::kBadSignature);
}

// Any single-bit flip in the signed region or the signature must be caught,
// either at parse time (malformed key) or by signature verification.
TEST_F(CryptoTest, SampledSingleBitMutationsAreRejected) {
  auto cert = MakeCertificate(*alice_, Subject(0x5C), 1000, 5000);
  ASSERT_TRUE(cert.ok());
  const Bytes wire = cert->Serialize();
  Drbg rng = Drbg::FromSeed(77);
  constexpr size_t kCoveredBits = (kCertificateSignedBytes + kSignatureBytes) * 8;
  for (int trial = 0; trial < 1000; ++trial) {
    size_t bit = rng.Uniform(kCoveredBits);
    Bytes mutated = wire;
    mutated[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    auto parsed = Certificate::Parse(mutated);
    if (!parsed.ok()) continue;
    ASSERT_NE(VerifyCertificate(*parsed, 2000), CertStatus::kValid) << "bit " << bit;
  }
}

TEST_F(CryptoTest, NonZeroPaddingRejectedAtParse) {
  auto cert = MakeCertificate(*alice_, Subject(2), 1, 2);
  Bytes wire = cert->Serialize();
  wire[480] = 1;
  EXPECT_FALSE(Certificate::Parse(wire).ok());
}

}  // namespace
}  // namespace friendlink
