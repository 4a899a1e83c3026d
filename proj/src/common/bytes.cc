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

#include "friendlink/bytes.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace friendlink {

std::string ToHex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

void XorInto(std::span<uint8_t> dst, ByteSpan src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

absl::StatusOr<uint64_t> ByteReader::Le(int width) {
  if (remaining() < static_cast<size_t>(width)) {
    return absl::InvalidArgumentError(
        absl::StrCat("truncated input: need ", width, " bytes, have ", remaining()));
  }
  uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
  }
  pos_ += width;
  return v;
}

absl::StatusOr<uint8_t> ByteReader::U8() {
  auto v = Le(1);
  if (!v.ok()) return v.status();
  return static_cast<uint8_t>(*v);
}

absl::StatusOr<uint16_t> ByteReader::U16() {
  auto v = Le(2);
  if (!v.ok()) return v.status();
  return static_cast<uint16_t>(*v);
}

absl::StatusOr<uint32_t> ByteReader::U32() {
  auto v = Le(4);
  if (!v.ok()) return v.status();
  return static_cast<uint32_t>(*v);
}

absl::StatusOr<uint64_t> ByteReader::U64() { return Le(8); }

absl::StatusOr<ByteSpan> ByteReader::Take(size_t n) {
  if (remaining() < n) {
    return absl::InvalidArgumentError(
        absl::StrCat("truncated input: need ", n, " bytes, have ", remaining()));
  }
  ByteSpan out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

absl::StatusOr<ByteSpan> ByteReader::LengthPrefixed() {
  auto len = U32();
  if (!len.ok()) return len.status();
  return Take(*len);
}

ByteSpan ByteReader::Rest() {
  ByteSpan out = data_.subspan(pos_);
  pos_ = data_.size();
  return out;
}

}  // namespace friendlink
