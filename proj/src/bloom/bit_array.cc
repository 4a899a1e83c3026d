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

#include "friendlink/bloom/bit_array.h"

#include <bit>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace friendlink {

absl::StatusOr<BitArray> BitArray::FromBytes(size_t num_bits, ByteSpan packed) {
  if (packed.size() != (num_bits + 7) / 8) {
    return absl::InvalidArgumentError(absl::StrCat("bit array of ", num_bits, " bits needs ",
                                                   (num_bits + 7) / 8, " bytes, got ",
                                                   packed.size()));
  }
  if (num_bits % 8 != 0 && (packed.back() >> (num_bits % 8)) != 0) {
    return absl::InvalidArgumentError("padding bits set past the bit array length");
  }
  BitArray out(num_bits);
  out.bytes_.assign(packed.begin(), packed.end());
  return out;
}

size_t BitArray::Popcount() const {
  size_t total = 0;
  for (uint8_t b : bytes_) total += std::popcount(b);
  return total;
}

absl::StatusOr<BitArray> BitArray::Xor(const BitArray& other) const {
  if (other.num_bits_ != num_bits_) {
    return absl::InvalidArgumentError(
        absl::StrCat("length mismatch: ", num_bits_, " vs ", other.num_bits_));
  }
  BitArray out = *this;
  XorInto(out.bytes_, other.bytes_);
  return out;
}

}  // namespace friendlink
