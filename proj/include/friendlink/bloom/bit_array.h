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

#ifndef FRIENDLINK_BLOOM_BIT_ARRAY_H_
#define FRIENDLINK_BLOOM_BIT_ARRAY_H_

#include <cstddef>
#include <cstdint>

#include "absl/status/statusor.h"
#include "friendlink/bytes.h"

namespace friendlink {

// Fixed-length bit array. Bit i lives in byte i / 8 at position i % 8; bits
// past the logical length in the last byte are always zero.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(size_t num_bits) : num_bits_(num_bits), bytes_((num_bits + 7) / 8, 0) {}

  // Wraps packed bytes; fails if the byte count does not match or padding
  // bits in the final byte are set.
  static absl::StatusOr<BitArray> FromBytes(size_t num_bits, ByteSpan packed);

  size_t size() const { return num_bits_; }
  bool Get(size_t i) const { return (bytes_[i / 8] >> (i % 8)) & 1; }
  void Set(size_t i) { bytes_[i / 8] |= static_cast<uint8_t>(1u << (i % 8)); }
  size_t Popcount() const;

  // Element-wise XOR; lengths must match.
  absl::StatusOr<BitArray> Xor(const BitArray& other) const;

  const Bytes& bytes() const { return bytes_; }

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  size_t num_bits_ = 0;
  Bytes bytes_;
};

}  // namespace friendlink

#endif  // FRIENDLINK_BLOOM_BIT_ARRAY_H_
