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

#include "friendlink/crypto/certificate.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"

namespace friendlink {

std::string_view CertStatusName(CertStatus status) {
  switch (status) {
    case CertStatus::kValid:
      return "valid";
    case CertStatus::kExpired:
      return "expired";
    case CertStatus::kBadSignature:
      return "bad_signature";
  }
  return "unknown";
}

Bytes Certificate::SignedBody() const {
  ByteWriter w;
  w.PutBytes(subject.digest);
  w.PutBytes(public_key.wire());
  w.PutU64(not_before);
  w.PutU64(not_after);
  return std::move(w).Take();
}

Bytes Certificate::Serialize() const {
  ByteWriter w;
  w.PutBytes(SignedBody());
  w.PutBytes(signature);
  w.PutZeros(kCertificateWireBytes - w.size());
  return std::move(w).Take();
}

absl::StatusOr<Certificate> Certificate::Parse(ByteSpan wire) {
  if (wire.size() != kCertificateWireBytes) {
    return absl::InvalidArgumentError(
        absl::StrCat("certificate must be ", kCertificateWireBytes, " bytes, got ", wire.size()));
  }
  ByteReader r(wire);
  Certificate cert{.subject = {}, .public_key = {}, .not_before = 0, .not_after = 0,
                   .signature = {}};
  FL_ASSIGN_OR_RETURN(ByteSpan subject, r.Take(kDigestBytes));
  std::copy(subject.begin(), subject.end(), cert.subject.digest.begin());
  FL_ASSIGN_OR_RETURN(ByteSpan key_wire, r.Take(kPublicKeyWireBytes));
  FL_ASSIGN_OR_RETURN(cert.public_key, PublicKey::Parse(key_wire));
  FL_ASSIGN_OR_RETURN(cert.not_before, r.U64());
  FL_ASSIGN_OR_RETURN(cert.not_after, r.U64());
  FL_ASSIGN_OR_RETURN(ByteSpan sig, r.Take(kSignatureBytes));
  cert.signature.assign(sig.begin(), sig.end());
  for (uint8_t b : r.Rest()) {
    if (b != 0) return absl::InvalidArgumentError("certificate padding not zero");
  }
  return cert;
}

absl::StatusOr<Certificate> MakeCertificate(const KeyPair& pair, const CompositeId& subject,
                                            Timestamp not_before, Timestamp not_after) {
  if (not_before >= not_after) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid validity window [", not_before, ", ", not_after, "]"));
  }
  Certificate cert{.subject = subject,
                   .public_key = pair.public_key(),
                   .not_before = not_before,
                   .not_after = not_after,
                   .signature = {}};
  cert.signature = pair.Sign(cert.SignedBody());
  return cert;
}

CertStatus VerifyCertificate(const Certificate& cert, Timestamp now) {
  if (!VerifySignature(cert.public_key, cert.SignedBody(), cert.signature)) {
    return CertStatus::kBadSignature;
  }
  if (now < cert.not_before || now > cert.not_after) return CertStatus::kExpired;
  return CertStatus::kValid;
}

}  // namespace friendlink
