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

#include "friendlink/protocol/messages.h"

#include "friendlink/crypto/symmetric.h"
#include "friendlink/status_macros.h"

namespace friendlink {

std::string_view FrameTypeName(FrameType type) {
  switch (type) {
    case FrameType::kSetup:
      return "setup";
    case FrameType::kReply:
      return "reply";
    case FrameType::kCertUpdate:
      return "cert_update";
    case FrameType::kData:
      return "data";
  }
  return "unknown";
}

size_t DataMessage::PaddedBodyBytes() const {
  return body.size() >= kSymTagBytes ? body.size() - kSymTagBytes : 0;
}

FrameType TypeOf(const Frame& frame) { return static_cast<FrameType>(frame.index()); }

namespace {

struct Encoder {
  ByteWriter& w;

  void operator()(const SetupRequest& m) {
    w.PutBytes(m.bf_c.Serialize());
    w.PutBytes(m.bf_c_plus.bytes());
    w.PutLengthPrefixed(m.cf);
  }
  void operator()(const SetupReply& m) { w.PutBytes(m.encrypted_cert); }
  void operator()(const CertUpdate& m) {
    for (const Certificate& c : m.certs) w.PutBytes(c.Serialize());
  }
  void operator()(const DataMessage& m) {
    w.PutU16(static_cast<uint16_t>(m.wrapped_key.size()));
    w.PutBytes(m.wrapped_key);
    w.PutBytes(m.body);
  }
};

absl::StatusOr<Frame> DecodeSetup(ByteReader& r) {
  FL_ASSIGN_OR_RETURN(ByteSpan header, r.Take(BloomFilter::kHeaderBytes));
  ByteReader hr(header);
  FL_ASSIGN_OR_RETURN(uint32_t m_bits, hr.U32());
  FL_ASSIGN_OR_RETURN(ByteSpan filter_bits, r.Take((static_cast<size_t>(m_bits) + 7) / 8));
  Bytes filter_wire(header.begin(), header.end());
  filter_wire.insert(filter_wire.end(), filter_bits.begin(), filter_bits.end());
  FL_ASSIGN_OR_RETURN(BloomFilter bf_c, BloomFilter::Deserialize(filter_wire));
  FL_ASSIGN_OR_RETURN(ByteSpan masked, r.Take(filter_bits.size()));
  FL_ASSIGN_OR_RETURN(BitArray bf_c_plus, BitArray::FromBytes(m_bits, masked));
  FL_ASSIGN_OR_RETURN(ByteSpan cf, r.LengthPrefixed());
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes in setup frame");
  return SetupRequest{std::move(bf_c), std::move(bf_c_plus), Bytes(cf.begin(), cf.end())};
}

absl::StatusOr<Frame> DecodeCertUpdate(ByteReader& r) {
  if (r.remaining() % kCertificateWireBytes != 0) {
    return absl::InvalidArgumentError("certificate update is not a whole number of certificates");
  }
  CertUpdate update;
  while (!r.done()) {
    FL_ASSIGN_OR_RETURN(ByteSpan raw, r.Take(kCertificateWireBytes));
    FL_ASSIGN_OR_RETURN(Certificate cert, Certificate::Parse(raw));
    update.certs.push_back(std::move(cert));
  }
  return update;
}

absl::StatusOr<Frame> DecodeData(ByteReader& r) {
  FL_ASSIGN_OR_RETURN(uint16_t key_len, r.U16());
  FL_ASSIGN_OR_RETURN(ByteSpan key, r.Take(key_len));
  ByteSpan body = r.Rest();
  return DataMessage{Bytes(key.begin(), key.end()), Bytes(body.begin(), body.end())};
}

}  // namespace

Bytes EncodeFrame(const Frame& frame) {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(TypeOf(frame)));
  std::visit(Encoder{w}, frame);
  return std::move(w).Take();
}

absl::StatusOr<Frame> DecodeFrame(ByteSpan wire) {
  ByteReader r(wire);
  FL_ASSIGN_OR_RETURN(uint8_t tag, r.U8());
  switch (static_cast<FrameType>(tag)) {
    case FrameType::kSetup:
      return DecodeSetup(r);
    case FrameType::kReply: {
      ByteSpan rest = r.Rest();
      return SetupReply{Bytes(rest.begin(), rest.end())};
    }
    case FrameType::kCertUpdate:
      return DecodeCertUpdate(r);
    case FrameType::kData:
      return DecodeData(r);
  }
  return absl::InvalidArgumentError("unknown frame tag");
}

}  // namespace friendlink
