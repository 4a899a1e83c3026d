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

#ifndef FRIENDLINK_FSS_CHECKIN_H_
#define FRIENDLINK_FSS_CHECKIN_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/drbg.h"
#include "friendlink/fss/database.h"
#include "friendlink/fss/dpf.h"

namespace friendlink {

// Slot payloads carry a 2-byte little-endian length before the message and
// zero padding after it, so overlapping writes are detectable.
inline constexpr size_t kSlotPrefixBytes = 2;

absl::StatusOr<Bytes> EncodeSlot(ByteSpan message, uint32_t output_len);

enum class SlotKind { kEmpty, kMessage, kGarbled };
std::string_view SlotKindName(SlotKind kind);

struct DecodedSlot {
  SlotKind kind = SlotKind::kEmpty;
  Bytes message;
};

DecodedSlot DecodeSlot(ByteSpan slot);

struct CheckIn {
  uint64_t index = 0;
  std::vector<DpfKey> keys;  // one per server
};

// Writes `message` at a uniformly random slot.
absl::StatusOr<CheckIn> ClientCheckIn(ByteSpan message, const DpfParams& params, Drbg& rng);

// Same, at a caller-chosen slot (used to force collisions in tests).
absl::StatusOr<CheckIn> ClientCheckInAt(ByteSpan message, uint64_t index, const DpfParams& params,
                                        Drbg& rng);

// One aggregation server speaking a small request/response protocol:
//
//   SUBMIT   [1][epoch u64][client u64][key]           -> ok
//   SEAL     [2][epoch u64]                            -> ok
//   EXCHANGE [3][epoch u64][membership 32B][delta]     -> ok
//   OUTPUT   [4][epoch u64]                            -> database bytes
//
// Responses are [status u8][payload]; status 0 is success, anything else is
// followed by a UTF-8 error message. Membership is the SHA-256 of the sorted
// client ids a server accepted; an epoch whose servers disagree on it is
// failed, never combined.
class CheckinServer {
 public:
  enum class Op : uint8_t { kSubmit = 1, kSeal = 2, kExchange = 3, kOutput = 4 };
  using MembershipDigest = std::array<uint8_t, 32>;

  CheckinServer(uint32_t server_index, const DpfParams& params)
      : index_(server_index), params_(params) {}

  Bytes Handle(ByteSpan request);

  // Request builders.
  static Bytes SubmitRequest(uint64_t epoch, uint64_t client, const DpfKey& key);
  static Bytes SealRequest(uint64_t epoch);
  static Bytes ExchangeRequest(uint64_t epoch, const MembershipDigest& membership,
                               const ShareDatabase& delta);
  static Bytes OutputRequest(uint64_t epoch);

  // Unwraps a response: the payload on success, the server's error otherwise.
  static absl::StatusOr<Bytes> ParseResponse(ByteSpan response);

  // What this server would send in its EXCHANGE for `epoch`.
  absl::StatusOr<Bytes> ExchangeFor(uint64_t epoch) const;

  uint32_t index() const { return index_; }

 private:
  struct EpochSlot {
    explicit EpochSlot(uint64_t id, const DpfParams& p) : epoch(id, p) {}
    Epoch epoch;
    std::set<uint64_t> clients;
    std::vector<ShareDatabase> remote;
    std::optional<ShareDatabase> output;
    std::optional<std::string> failure;
  };

  absl::StatusOr<Bytes> Dispatch(ByteSpan request);
  EpochSlot& Slot(uint64_t epoch);
  MembershipDigest Membership(const EpochSlot& slot) const;

  uint32_t index_;
  DpfParams params_;
  std::map<uint64_t, EpochSlot> epochs_;
};

}  // namespace friendlink

#endif  // FRIENDLINK_FSS_CHECKIN_H_
