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

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "friendlink/bloom/murmur3.h"
#include "friendlink/status_macros.h"

namespace friendlink {

namespace {

// Seeds of the two digests combined by double hashing.
constexpr uint32_t kSeedPrimary = 0;
constexpr uint32_t kSeedSecondary = 0x9747b28c;

}  // namespace

absl::StatusOr<BloomParams> DeriveParams(uint32_t n_items, double fpp) {
  if (n_items == 0) return absl::InvalidArgumentError("n_items must be positive");
  if (!(fpp > 0.0 && fpp < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("fpp must lie in (0,1), got ", fpp));
  }
  const double ln2 = std::log(2.0);
  const double m = std::ceil(-static_cast<double>(n_items) * std::log(fpp) / (ln2 * ln2));
  if (m > std::numeric_limits<uint32_t>::max()) {
    return absl::OutOfRangeError("filter length exceeds 2^32 bits");
  }
  BloomParams params;
  params.n_items = n_items;
  params.fpp = fpp;
  params.m_bits = static_cast<uint32_t>(m);
  params.k_hashes = static_cast<uint32_t>(
      std::max(1.0, std::round(m / static_cast<double>(n_items) * ln2)));
  return params;
}

std::vector<uint32_t> HashPositions(ByteSpan element, const BloomParams& params) {
  const uint64_t h1 = Murmur3_32(element, kSeedPrimary);
  const uint64_t h2 = Murmur3_32(element, kSeedSecondary);
  std::vector<uint32_t> positions(params.k_hashes);
  for (uint32_t i = 0; i < params.k_hashes; ++i) {
    positions[i] = static_cast<uint32_t>((h1 + i * h2) % params.m_bits);
  }
  return positions;
}

BloomFilter BloomFilter::Insert(ByteSpan element) const {
  BloomFilter out = *this;
  out.InsertInPlace(element);
  return out;
}

void BloomFilter::InsertInPlace(ByteSpan element) {
  for (uint32_t pos : HashPositions(element, params_)) bits_.Set(pos);
}

bool BloomFilter::Contains(ByteSpan element) const {
  for (uint32_t pos : HashPositions(element, params_)) {
    if (!bits_.Get(pos)) return false;
  }
  return true;
}

absl::StatusOr<BloomFilter> BloomFilter::XorMask(const BitArray& mask) const {
  FL_ASSIGN_OR_RETURN(BitArray masked, bits_.Xor(mask));
  return BloomFilter(params_, std::move(masked));
}

Bytes BloomFilter::Serialize() const {
  ByteWriter w;
  w.PutU32(params_.m_bits);
  w.PutU32(params_.k_hashes);
  w.PutBytes(bits_.bytes());
  return std::move(w).Take();
}

absl::StatusOr<BloomFilter> BloomFilter::Deserialize(ByteSpan wire) {
  ByteReader r(wire);
  BloomParams params;
  FL_ASSIGN_OR_RETURN(params.m_bits, r.U32());
  FL_ASSIGN_OR_RETURN(params.k_hashes, r.U32());
  if (params.m_bits == 0 || params.k_hashes == 0) {
    return absl::InvalidArgumentError("filter header has zero length or hash count");
  }
  if (r.remaining() != params.payload_bytes()) {
    return absl::InvalidArgumentError(absl::StrCat("filter payload is ", r.remaining(),
                                                   " bytes, header implies ",
                                                   params.payload_bytes()));
  }
  FL_ASSIGN_OR_RETURN(BitArray bits, BitArray::FromBytes(params.m_bits, r.Rest()));
  return BloomFilter(params, std::move(bits));
}

}  // namespace friendlink
