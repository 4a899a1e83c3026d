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

#ifndef FRIENDLINK_FSS_DATABASE_H_
#define FRIENDLINK_FSS_DATABASE_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/fss/dpf.h"

namespace friendlink {

// 2^n slots of output_len bytes, stored back to back.
class ShareDatabase {
 public:
  ShareDatabase() = default;
  ShareDatabase(uint64_t slots, uint32_t slot_bytes)
      : slots_(slots), slot_bytes_(slot_bytes), data_(slots * slot_bytes, 0) {}
  explicit ShareDatabase(const DpfParams& params)
      : ShareDatabase(params.domain_size(), params.output_len) {}

  static absl::StatusOr<ShareDatabase> FromBytes(uint64_t slots, uint32_t slot_bytes,
                                                 ByteSpan data);

  uint64_t slots() const { return slots_; }
  uint32_t slot_bytes() const { return slot_bytes_; }
  ByteSpan slot(uint64_t i) const { return ByteSpan(data_).subspan(i * slot_bytes_, slot_bytes_); }
  std::span<uint8_t> mutable_slot(uint64_t i) {
    return std::span<uint8_t>(data_).subspan(i * slot_bytes_, slot_bytes_);
  }
  const Bytes& bytes() const { return data_; }
  std::span<uint8_t> mutable_bytes() { return data_; }

  // Slotwise XOR; InvalidArgument on a shape mismatch.
  absl::Status XorWith(const ShareDatabase& other);
  bool IsZero() const;

  friend bool operator==(const ShareDatabase&, const ShareDatabase&) = default;

 private:
  uint64_t slots_ = 0;
  uint32_t slot_bytes_ = 0;
  Bytes data_;
};

// Evaluates `key` on the whole domain, one seed expansion per grid row.
ShareDatabase EvalFull(const DpfKey& key);

// XORs the full evaluation of `key` into `db` without materializing it.
absl::Status AccumulateInto(ShareDatabase& db, const DpfKey& key);

enum class EpochState { kOpen, kSealed, kCombined };
std::string_view EpochStateName(EpochState state);

// One server's view of an aggregation epoch.
class Epoch {
 public:
  Epoch(uint64_t epoch_id, const DpfParams& params)
      : id_(epoch_id), params_(params), delta_(params) {}

  // delta ^= EvalFull(key). FailedPrecondition once sealed.
  absl::Status Accumulate(const DpfKey& key);
  absl::Status Seal();
  // Final database: local delta XOR every remote delta. Requires a sealed
  // epoch; every server that combines the same deltas gets the same bytes.
  absl::StatusOr<ShareDatabase> Combine(std::span<const ShareDatabase> remote_deltas);

  uint64_t id() const { return id_; }
  const DpfParams& params() const { return params_; }
  EpochState state() const { return state_; }
  const ShareDatabase& delta() const { return delta_; }
  uint64_t accumulated() const { return accumulated_; }

 private:
  uint64_t id_;
  DpfParams params_;
  EpochState state_ = EpochState::kOpen;
  ShareDatabase delta_;
  uint64_t accumulated_ = 0;
};

}  // namespace friendlink

#endif  // FRIENDLINK_FSS_DATABASE_H_
