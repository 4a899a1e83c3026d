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

#include "friendlink/fss/database.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"

namespace friendlink {

absl::StatusOr<ShareDatabase> ShareDatabase::FromBytes(uint64_t slots, uint32_t slot_bytes,
                                                       ByteSpan data) {
  if (data.size() != slots * slot_bytes) {
    return absl::InvalidArgumentError(
        absl::StrCat("database is ", data.size(), " bytes, expected ", slots * slot_bytes));
  }
  ShareDatabase db(slots, slot_bytes);
  std::copy(data.begin(), data.end(), db.data_.begin());
  return db;
}

absl::Status ShareDatabase::XorWith(const ShareDatabase& other) {
  if (other.slots_ != slots_ || other.slot_bytes_ != slot_bytes_) {
    return absl::InvalidArgumentError("database shapes differ");
  }
  XorInto(data_, other.data_);
  return absl::OkStatus();
}

bool ShareDatabase::IsZero() const {
  return std::all_of(data_.begin(), data_.end(), [](uint8_t b) { return b == 0; });
}

absl::Status AccumulateInto(ShareDatabase& db, const DpfKey& key) {
  const DpfParams& p = key.params;
  if (db.slots() != p.domain_size() || db.slot_bytes() != p.output_len) {
    return absl::InvalidArgumentError("key does not match the database shape");
  }
  SeedExpander prg;
  Bytes row(p.row_bytes());
  const size_t row_bytes = p.row_bytes();
  for (uint64_t r = 0; r < p.grid_rows(); ++r) {
    DpfEvalRow(key, r, prg, row);
    XorInto(db.mutable_bytes().subspan(r * row_bytes, row_bytes), row);
  }
  return absl::OkStatus();
}

ShareDatabase EvalFull(const DpfKey& key) {
  ShareDatabase db(key.params);
  SeedExpander prg;
  const size_t row_bytes = key.params.row_bytes();
  for (uint64_t r = 0; r < key.params.grid_rows(); ++r) {
    DpfEvalRow(key, r, prg, db.mutable_bytes().subspan(r * row_bytes, row_bytes));
  }
  return db;
}

std::string_view EpochStateName(EpochState state) {
  switch (state) {
    case EpochState::kOpen:
      return "open";
    case EpochState::kSealed:
      return "sealed";
    case EpochState::kCombined:
      return "combined";
  }
  return "unknown";
}

absl::Status Epoch::Accumulate(const DpfKey& key) {
  if (state_ != EpochState::kOpen) {
    return absl::FailedPreconditionError(absl::StrCat("epoch ", id_, " is not open"));
  }
  if (key.params != params_) return absl::InvalidArgumentError("key parameters differ from epoch");
  FL_RETURN_IF_ERROR(AccumulateInto(delta_, key));
  ++accumulated_;
  return absl::OkStatus();
}

absl::Status Epoch::Seal() {
  if (state_ != EpochState::kOpen) {
    return absl::FailedPreconditionError(absl::StrCat("epoch ", id_, " already sealed"));
  }
  state_ = EpochState::kSealed;
  return absl::OkStatus();
}

absl::StatusOr<ShareDatabase> Epoch::Combine(std::span<const ShareDatabase> remote_deltas) {
  if (state_ == EpochState::kOpen) {
    return absl::FailedPreconditionError(absl::StrCat("epoch ", id_, " must be sealed first"));
  }
  ShareDatabase out = delta_;
  for (const ShareDatabase& d : remote_deltas) FL_RETURN_IF_ERROR(out.XorWith(d));
  state_ = EpochState::kCombined;
  return out;
}

}  // namespace friendlink
