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

#ifndef FRIENDLINK_BLOOM_BLOOM_FILTER_H_
#define FRIENDLINK_BLOOM_BLOOM_FILTER_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "friendlink/bloom/bit_array.h"
#include "friendlink/bytes.h"

namespace friendlink {

// Sizing of a Bloom filter. `n_items` and `fpp` are the design inputs;
// filters decoded from the wire only carry `m_bits` and `k_hashes`, and
// leave the design inputs zeroed.
struct BloomParams {
  uint32_t n_items = 0;
  double fpp = 0.0;
  uint32_t m_bits = 0;
  uint32_t k_hashes = 0;

  size_t payload_bytes() const { return (m_bits + 7) / 8; }
};

// Optimal filter length and hash count for `n_items` insertions at false
// positive probability `fpp`:
//   m = ceil(-n ln(fpp) / (ln 2)^2),  k = max(1, round(m/n ln 2)).
absl::StatusOr<BloomParams> DeriveParams(uint32_t n_items, double fpp);

// The k index positions of `element`, by double hashing two murmur3 digests:
// h_i = (h1 + i * h2) mod m.
std::vector<uint32_t> HashPositions(ByteSpan element, const BloomParams& params);

class BloomFilter {
 public:
  static constexpr size_t kHeaderBytes = 8;

  explicit BloomFilter(const BloomParams& params) : params_(params), bits_(params.m_bits) {}

  // Value-returning insert; the receiver is unchanged.
  [[nodiscard]] BloomFilter Insert(ByteSpan element) const;
  void InsertInPlace(ByteSpan element);
  bool Contains(ByteSpan element) const;

  // bits ^ mask; the mask must have exactly m_bits bits.
  absl::StatusOr<BloomFilter> XorMask(const BitArray& mask) const;

  // [m_bits u32 LE][k_hashes u32 LE][ceil(m_bits/8) payload bytes]
  Bytes Serialize() const;
  static absl::StatusOr<BloomFilter> Deserialize(ByteSpan wire);

  const BloomParams& params() const { return params_; }
  const BitArray& bits() const { return bits_; }
  size_t Popcount() const { return bits_.Popcount(); }

  friend bool operator==(const BloomFilter& a, const BloomFilter& b) {
    return a.params_.m_bits == b.params_.m_bits && a.params_.k_hashes == b.params_.k_hashes &&
           a.bits_ == b.bits_;
  }

 private:
  BloomFilter(const BloomParams& params, BitArray bits) : params_(params), bits_(std::move(bits)) {}

  BloomParams params_;
  BitArray bits_;
};

}  // namespace friendlink

#endif  // FRIENDLINK_BLOOM_BLOOM_FILTER_H_
