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

#ifndef FRIENDLINK_CRYPTO_SYMMETRIC_H_
#define FRIENDLINK_CRYPTO_SYMMETRIC_H_

#include <array>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/drbg.h"

namespace friendlink {

inline constexpr size_t kSymKeyBytes = 16;
inline constexpr size_t kAesBlockBytes = 16;
inline constexpr size_t kSymTagBytes = 16;

struct SymmetricKey {
  std::array<uint8_t, kSymKeyBytes> key_bytes{};

  static SymmetricKey Random(Drbg& rng) { return {rng.RandomArray<kSymKeyBytes>()}; }
  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

// Length of the padded AES-CBC body for a plaintext of `plaintext_len` bytes
// (PKCS#5: always at least one byte of padding).
constexpr size_t SymBodyLength(size_t plaintext_len) {
  return kAesBlockBytes * (plaintext_len / kAesBlockBytes + 1);
}
constexpr size_t SymCiphertextLength(size_t plaintext_len) {
  return SymBodyLength(plaintext_len) + kSymTagBytes;
}

// Layout: [AES-128-CBC/PKCS#5 body][16-byte tag]. The tag is a truncated
// HMAC-SHA256 of the plaintext under a key derived from `key`, and doubles as
// the CBC IV, so there is no separate IV on the wire.
Bytes SymEncrypt(const SymmetricKey& key, ByteSpan plaintext);

// DataLoss ("integrity failure") when the key is wrong or the ciphertext was
// altered.
absl::StatusOr<Bytes> SymDecrypt(const SymmetricKey& key, ByteSpan ciphertext);

bool IsIntegrityFailure(const absl::Status& status);

}  // namespace friendlink

#endif  // FRIENDLINK_CRYPTO_SYMMETRIC_H_
