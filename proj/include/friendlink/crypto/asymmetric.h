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

#ifndef FRIENDLINK_CRYPTO_ASYMMETRIC_H_
#define FRIENDLINK_CRYPTO_ASYMMETRIC_H_

#include <array>
#include <memory>

#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/drbg.h"

namespace friendlink {

inline constexpr size_t kRsaModulusBits = 1024;
inline constexpr size_t kRsaModulusBytes = kRsaModulusBits / 8;
// [modulus 128B big-endian][public exponent 4B big-endian][zero padding]
inline constexpr size_t kPublicKeyWireBytes = 160;
inline constexpr size_t kWrappedKeyBytes = kRsaModulusBytes;
inline constexpr size_t kSignatureBytes = kRsaModulusBytes;

namespace internal {
struct PkeyDeleter {
  void operator()(void* pkey) const;
};
}  // namespace internal

// RSA-1024 public key. Cheap to copy; the underlying key is shared and
// immutable.
class PublicKey {
 public:
  // Empty placeholder; only keys from Parse() or KeyPair are usable.
  PublicKey() = default;
  static absl::StatusOr<PublicKey> Parse(ByteSpan wire);

  bool valid() const { return pkey_ != nullptr; }

  const std::array<uint8_t, kPublicKeyWireBytes>& wire() const { return wire_; }

  friend bool operator==(const PublicKey& a, const PublicKey& b) { return a.wire_ == b.wire_; }

 private:
  friend class KeyPair;
  friend Bytes WrapKey(const PublicKey&, const SymmetricKey&);
  friend bool VerifySignature(const PublicKey&, ByteSpan, ByteSpan);

  PublicKey(std::shared_ptr<void> pkey, std::array<uint8_t, kPublicKeyWireBytes> wire)
      : pkey_(std::move(pkey)), wire_(wire) {}

  std::shared_ptr<void> pkey_;
  std::array<uint8_t, kPublicKeyWireBytes> wire_{};
};

class KeyPair {
 public:
  // Primes are drawn from `rng`, so a seeded generator yields a reproducible
  // key pair.
  static KeyPair Generate(Drbg& rng);

  const PublicKey& public_key() const { return public_; }

  Bytes Sign(ByteSpan message) const;
  absl::StatusOr<SymmetricKey> UnwrapKey(ByteSpan wrapped) const;

 private:
  KeyPair(std::shared_ptr<void> pkey, PublicKey pub)
      : private_(std::move(pkey)), public_(std::move(pub)) {}

  std::shared_ptr<void> private_;
  PublicKey public_;
};

// RSA-OAEP encryption of a symmetric key; always kWrappedKeyBytes long.
Bytes WrapKey(const PublicKey& peer, const SymmetricKey& key);
// RSA PKCS#1 v1.5 with SHA-256.
bool VerifySignature(const PublicKey& key, ByteSpan message, ByteSpan signature);

}  // namespace friendlink

#endif  // FRIENDLINK_CRYPTO_ASYMMETRIC_H_
