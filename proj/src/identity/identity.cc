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

#include "friendlink/identity/identity.h"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "friendlink/drbg.h"

namespace friendlink {

Digest128 OsnDigest(const OsnId& id) {
  uint8_t full[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(id.id_value.data(), id.id_value.size(), full, &len, EVP_sha1(), nullptr);
  Digest128 out;
  std::copy_n(full, kDigestBytes, out.begin());
  return out;
}

absl::StatusOr<CompositeId> CompositeOf(std::span<const OsnId> ids) {
  if (ids.empty()) return absl::InvalidArgumentError("composite of an empty ID list");
  std::set<Digest128> seen;
  CompositeId out;
  for (const OsnId& id : ids) {
    if (id.id_value.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("empty ID value for ", id.osn_name));
    }
    Digest128 d = OsnDigest(id);
    if (!seen.insert(d).second) {
      return absl::InvalidArgumentError("duplicate OSN digest would cancel in the composite");
    }
    XorInto(out.digest, d);
  }
  return out;
}

BitArray IdMask(const CompositeId& composite, size_t m_bits) {
  // Domain-separated seed so the mask stream is unrelated to the AES key
  // SymKeyOf() derives from the same digest.
  static constexpr char kLabel[] = "friendlink/id-mask";
  Bytes material(kLabel, kLabel + sizeof(kLabel) - 1);
  material.insert(material.end(), composite.digest.begin(), composite.digest.end());
  uint8_t seed[SHA256_DIGEST_LENGTH];
  SHA256(material.data(), material.size(), seed);

  Bytes stream((m_bits + 7) / 8);
  SeedExpander().Expand(std::span<const uint8_t, 16>(seed, 16), stream);
  if (m_bits % 8 != 0) stream.back() &= static_cast<uint8_t>((1u << (m_bits % 8)) - 1);
  return *BitArray::FromBytes(m_bits, stream);
}

SymmetricKey SymKeyOf(const CompositeId& composite) { return {composite.digest}; }

absl::Status FriendList::Add(std::string display_name, const CompositeId& composite) {
  if (index_.contains(composite)) {
    return absl::AlreadyExistsError(absl::StrCat("friend ", composite.hex(), " already listed"));
  }
  index_.emplace(composite, entries_.size());
  entries_.push_back({std::move(display_name), composite});
  return absl::OkStatus();
}

const FriendList::Entry* FriendList::Find(const CompositeId& composite) const {
  auto it = index_.find(composite);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

}  // namespace friendlink
