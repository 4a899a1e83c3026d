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

#ifndef FRIENDLINK_PROTOCOL_MESSAGES_H_
#define FRIENDLINK_PROTOCOL_MESSAGES_H_

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "friendlink/bloom/bloom_filter.h"
#include "friendlink/bytes.h"
#include "friendlink/crypto/certificate.h"

namespace friendlink {

// Longest plaintext a data message may carry.
inline constexpr size_t kMaxMessageBytes = 160;

enum class FrameType : uint8_t { kSetup = 0, kReply = 1, kCertUpdate = 2, kData = 3 };
std::string_view FrameTypeName(FrameType type);

// Discovery broadcast: the target filter, the same bits masked with the
// initiator's expanded ID, and the initiator's certificate encrypted under
// its ID-derived key.
struct SetupRequest {
  BloomFilter bf_c;
  BitArray bf_c_plus;
  Bytes cf;

  // Two headerless filters plus one plain certificate; the figure used when
  // comparing against published packet sizes.
  size_t AccountedBytes() const {
    return 2 * bf_c.params().payload_bytes() + kCertificateWireBytes;
  }
};

// A target's certificate encrypted under the initiator's ID-derived key.
struct SetupReply {
  Bytes encrypted_cert;
};

struct CertUpdate {
  std::vector<Certificate> certs;

  size_t PayloadBytes() const { return certs.size() * kCertificateWireBytes; }
};

struct DataMessage {
  Bytes wrapped_key;
  Bytes body;  // padded ciphertext followed by the integrity tag

  // Padded ciphertext only, without the tag.
  size_t PaddedBodyBytes() const;
};

using Frame = std::variant<SetupRequest, SetupReply, CertUpdate, DataMessage>;

FrameType TypeOf(const Frame& frame);

// One tag byte followed by the message fields.
//   setup:       filter wire, masked bits (ceil(m/8) bytes), u32-prefixed cf
//   reply:       encrypted certificate
//   cert_update: certificates back to back, count implied by length
//   data:        u16-prefixed wrapped key, body
Bytes EncodeFrame(const Frame& frame);
absl::StatusOr<Frame> DecodeFrame(ByteSpan wire);

}  // namespace friendlink

#endif  // FRIENDLINK_PROTOCOL_MESSAGES_H_
