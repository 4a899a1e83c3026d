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

#include "friendlink/fss/checkin.h"

#include <openssl/sha.h>

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"

namespace friendlink {

absl::StatusOr<Bytes> EncodeSlot(ByteSpan message, uint32_t output_len) {
  if (message.empty()) return absl::InvalidArgumentError("empty check-in message");
  if (output_len < kSlotPrefixBytes + 1 || message.size() > output_len - kSlotPrefixBytes) {
    return absl::InvalidArgumentError(absl::StrCat("message of ", message.size(),
                                                   " bytes does not fit a ", output_len,
                                                   "-byte slot"));
  }
  Bytes slot(output_len, 0);
  slot[0] = static_cast<uint8_t>(message.size());
  slot[1] = static_cast<uint8_t>(message.size() >> 8);
  std::copy(message.begin(), message.end(), slot.begin() + kSlotPrefixBytes);
  return slot;
}

std::string_view SlotKindName(SlotKind kind) {
  switch (kind) {
    case SlotKind::kEmpty:
      return "empty";
    case SlotKind::kMessage:
      return "message";
    case SlotKind::kGarbled:
      return "garbled";
  }
  return "unknown";
}

DecodedSlot DecodeSlot(ByteSpan slot) {
  auto is_zero = [](uint8_t b) { return b == 0; };
  if (std::all_of(slot.begin(), slot.end(), is_zero)) return {};
  DecodedSlot garbled{SlotKind::kGarbled, {}};
  if (slot.size() < kSlotPrefixBytes + 1) return garbled;
  const size_t len = slot[0] | (static_cast<size_t>(slot[1]) << 8);
  if (len < 1 || len > slot.size() - kSlotPrefixBytes) return garbled;
  ByteSpan body = slot.subspan(kSlotPrefixBytes, len);
  ByteSpan tail = slot.subspan(kSlotPrefixBytes + len);
  if (!std::all_of(tail.begin(), tail.end(), is_zero)) return garbled;
  return {SlotKind::kMessage, Bytes(body.begin(), body.end())};
}

absl::StatusOr<CheckIn> ClientCheckInAt(ByteSpan message, uint64_t index, const DpfParams& params,
                                        Drbg& rng) {
  FL_ASSIGN_OR_RETURN(Bytes beta, EncodeSlot(message, params.output_len));
  CheckIn out;
  out.index = index;
  FL_ASSIGN_OR_RETURN(out.keys, DpfGen(index, beta, params, rng));
  return out;
}

absl::StatusOr<CheckIn> ClientCheckIn(ByteSpan message, const DpfParams& params, Drbg& rng) {
  return ClientCheckInAt(message, rng.Uniform(params.domain_size()), params, rng);
}

namespace {

constexpr uint8_t kOk = 0;
constexpr uint8_t kError = 1;

Bytes Header(CheckinServer::Op op, uint64_t epoch) {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(op));
  w.PutU64(epoch);
  return std::move(w).Take();
}

}  // namespace

Bytes CheckinServer::SubmitRequest(uint64_t epoch, uint64_t client, const DpfKey& key) {
  ByteWriter w;
  w.PutBytes(Header(Op::kSubmit, epoch));
  w.PutU64(client);
  w.PutBytes(key.Serialize());
  return std::move(w).Take();
}

Bytes CheckinServer::SealRequest(uint64_t epoch) { return Header(Op::kSeal, epoch); }

Bytes CheckinServer::ExchangeRequest(uint64_t epoch, const MembershipDigest& membership,
                                     const ShareDatabase& delta) {
  ByteWriter w;
  w.PutBytes(Header(Op::kExchange, epoch));
  w.PutBytes(membership);
  w.PutBytes(delta.bytes());
  return std::move(w).Take();
}

Bytes CheckinServer::OutputRequest(uint64_t epoch) { return Header(Op::kOutput, epoch); }

absl::StatusOr<Bytes> CheckinServer::ParseResponse(ByteSpan response) {
  if (response.empty()) return absl::DataLossError("empty response");
  ByteSpan payload = response.subspan(1);
  if (response[0] != kOk) {
    return absl::FailedPreconditionError(std::string(payload.begin(), payload.end()));
  }
  return Bytes(payload.begin(), payload.end());
}

Bytes CheckinServer::Handle(ByteSpan request) {
  absl::StatusOr<Bytes> result = Dispatch(request);
  Bytes out;
  if (result.ok()) {
    out.push_back(kOk);
    out.insert(out.end(), result->begin(), result->end());
  } else {
    out.push_back(kError);
    std::string msg(result.status().message());
    out.insert(out.end(), msg.begin(), msg.end());
  }
  return out;
}

CheckinServer::EpochSlot& CheckinServer::Slot(uint64_t epoch) {
  return epochs_.try_emplace(epoch, epoch, params_).first->second;
}

CheckinServer::MembershipDigest CheckinServer::Membership(const EpochSlot& slot) const {
  ByteWriter w;
  for (uint64_t c : slot.clients) w.PutU64(c);  // std::set iterates sorted
  MembershipDigest d;
  SHA256(w.bytes().data(), w.bytes().size(), d.data());
  return d;
}

absl::StatusOr<Bytes> CheckinServer::ExchangeFor(uint64_t epoch) const {
  auto it = epochs_.find(epoch);
  if (it == epochs_.end() || it->second.epoch.state() == EpochState::kOpen) {
    return absl::FailedPreconditionError(absl::StrCat("epoch ", epoch, " is not sealed"));
  }
  return ExchangeRequest(epoch, Membership(it->second), it->second.epoch.delta());
}

absl::StatusOr<Bytes> CheckinServer::Dispatch(ByteSpan request) {
  ByteReader r(request);
  FL_ASSIGN_OR_RETURN(uint8_t op, r.U8());
  FL_ASSIGN_OR_RETURN(uint64_t epoch_id, r.U64());
  EpochSlot& slot = Slot(epoch_id);
  if (slot.failure.has_value()) return absl::AbortedError(*slot.failure);

  switch (static_cast<Op>(op)) {
    case Op::kSubmit: {
      FL_ASSIGN_OR_RETURN(uint64_t client, r.U64());
      FL_ASSIGN_OR_RETURN(DpfKey key, DpfKey::Parse(r.Rest()));
      if (key.party_index != index_) {
        return absl::InvalidArgumentError("key was generated for another server");
      }
      if (slot.clients.contains(client)) {
        return absl::AlreadyExistsError(absl::StrCat("client ", client, " already submitted"));
      }
      FL_RETURN_IF_ERROR(slot.epoch.Accumulate(key));
      slot.clients.insert(client);
      return Bytes{};
    }
    case Op::kSeal:
      FL_RETURN_IF_ERROR(slot.epoch.Seal());
      return Bytes{};
    case Op::kExchange: {
      if (slot.epoch.state() != EpochState::kSealed) {
        return absl::FailedPreconditionError("exchange before seal");
      }
      FL_ASSIGN_OR_RETURN(ByteSpan digest, r.Take(sizeof(MembershipDigest)));
      FL_ASSIGN_OR_RETURN(ShareDatabase delta,
                          ShareDatabase::FromBytes(params_.domain_size(), params_.output_len,
                                                   r.Rest()));
      MembershipDigest mine = Membership(slot);
      if (!std::equal(digest.begin(), digest.end(), mine.begin())) {
        slot.failure = absl::StrCat("epoch ", epoch_id, " failed: client sets differ");
        return absl::AbortedError(*slot.failure);
      }
      slot.remote.push_back(std::move(delta));
      if (slot.remote.size() == params_.party_count - 1) {
        FL_ASSIGN_OR_RETURN(slot.output, slot.epoch.Combine(slot.remote));
      }
      return Bytes{};
    }
    case Op::kOutput:
      if (!slot.output.has_value()) {
        return absl::FailedPreconditionError(absl::StrCat("epoch ", epoch_id, " not combined"));
      }
      return slot.output->bytes();
  }
  return absl::InvalidArgumentError("unknown operation");
}

}  // namespace friendlink
