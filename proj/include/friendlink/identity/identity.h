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

#ifndef FRIENDLINK_IDENTITY_IDENTITY_H_
#define FRIENDLINK_IDENTITY_IDENTITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bloom/bit_array.h"
#include "friendlink/bytes.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/identity/composite_id.h"

namespace friendlink {

// A user's confidential identifier on one social network.
struct OsnId {
  std::string osn_name;
  Bytes id_value;

  static OsnId FromString(std::string osn, std::string_view id) {
    return {std::move(osn), Bytes(id.begin(), id.end())};
  }
};

// trunc128(SHA-1(id_value)).
Digest128 OsnDigest(const OsnId& id);

// XOR of the per-OSN digests. Rejects an empty list, empty ID values, and
// lists in which two entries share a digest (they would cancel).
absl::StatusOr<CompositeId> CompositeOf(std::span<const OsnId> ids);

// Deterministic expansion of the composite digest to an `m_bits` mask, used
// to hide the initiator inside BF_c+.
BitArray IdMask(const CompositeId& composite, size_t m_bits);

// The symmetric key derived from a confidential ID: the truncated SHA-1
// digest itself.
SymmetricKey SymKeyOf(const CompositeId& composite);

class FriendList {
 public:
  struct Entry {
    std::string display_name;
    CompositeId composite;
  };

  // AlreadyExists if `composite` is already listed.
  absl::Status Add(std::string display_name, const CompositeId& composite);
  const Entry* Find(const CompositeId& composite) const;
  bool Contains(const CompositeId& composite) const { return Find(composite) != nullptr; }

  size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<Entry> entries_;
  std::map<CompositeId, size_t> index_;
};

}  // namespace friendlink

#endif  // FRIENDLINK_IDENTITY_IDENTITY_H_
