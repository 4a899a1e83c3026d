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

#ifndef FRIENDLINK_CRYPTO_CERTIFICATE_H_
#define FRIENDLINK_CRYPTO_CERTIFICATE_H_

#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/crypto/asymmetric.h"
#include "friendlink/identity/composite_id.h"

namespace friendlink {

// Seconds on the (simulated) clock.
using Timestamp = uint64_t;

// Fixed wire layout, zero-padded to kCertificateWireBytes:
//   [subject_digest 16B][public key 160B][not_before u64][not_after u64]
//   [signature 128B][zero padding]
inline constexpr size_t kCertificateSignedBytes = kDigestBytes + kPublicKeyWireBytes + 8 + 8;
inline constexpr size_t kCertificateWireBytes = 481;
static_assert(kCertificateSignedBytes + kSignatureBytes <= kCertificateWireBytes);

enum class CertStatus { kValid, kExpired, kBadSignature };
std::string_view CertStatusName(CertStatus status);

// Self-signed binding of an identity digest to a public key for a limited
// validity window.
struct Certificate {
  CompositeId subject;
  PublicKey public_key;
  Timestamp not_before = 0;
  Timestamp not_after = 0;
  Bytes signature;

  // The bytes covered by the signature.
  Bytes SignedBody() const;
  Bytes Serialize() const;
  static absl::StatusOr<Certificate> Parse(ByteSpan wire);
};

// InvalidArgument unless not_before < not_after.
absl::StatusOr<Certificate> MakeCertificate(const KeyPair& pair, const CompositeId& subject,
                                            Timestamp not_before, Timestamp not_after);

// Signature first, then the validity window (inclusive at both ends).
CertStatus VerifyCertificate(const Certificate& cert, Timestamp now);

}  // namespace friendlink

#endif  // FRIENDLINK_CRYPTO_CERTIFICATE_H_
