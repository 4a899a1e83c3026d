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

#ifndef FRIENDLINK_IDENTITY_COMPOSITE_ID_H_
#define FRIENDLINK_IDENTITY_COMPOSITE_ID_H_

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "friendlink/bytes.h"

namespace friendlink {

inline constexpr size_t kDigestBytes = 16;
using Digest128 = std::array<uint8_t, kDigestBytes>;

// 128-bit identity digest. For one OSN it is the SHA-1 of the confidential
// ID truncated to 128 bits; for several OSNs it is the XOR of those digests.
struct CompositeId {
  Digest128 digest{};

  ByteSpan bytes() const { return digest; }
  std::string hex() const { return ToHex(digest); }
  bool is_zero() const {
    for (uint8_t b : digest) {
      if (b != 0) return false;
    }
    return true;
  }

  friend auto operator<=>(const CompositeId&, const CompositeId&) = default;
};

}  // namespace friendlink

#endif  // FRIENDLINK_IDENTITY_COMPOSITE_ID_H_
