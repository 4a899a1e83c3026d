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

#ifndef FRIENDLINK_BYTES_H_
#define FRIENDLINK_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace friendlink {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string ToHex(ByteSpan data);

// XORs `src` into `dst`; sizes must match.
void XorInto(std::span<uint8_t> dst, ByteSpan src);

// Appends little-endian integers and raw bytes to a growing buffer.
class ByteWriter {
 public:
  void PutU8(uint8_t v) { out_.push_back(v); }
  void PutU16(uint16_t v) { PutLe(v, 2); }
  void PutU32(uint32_t v) { PutLe(v, 4); }
  void PutU64(uint64_t v) { PutLe(v, 8); }
  void PutBytes(ByteSpan b) { out_.insert(out_.end(), b.begin(), b.end()); }
  // u32 length prefix followed by the bytes.
  void PutLengthPrefixed(ByteSpan b) {
    PutU32(static_cast<uint32_t>(b.size()));
    PutBytes(b);
  }
  void PutZeros(size_t n) { out_.insert(out_.end(), n, 0); }

  size_t size() const { return out_.size(); }
  Bytes Take() && { return std::move(out_); }
  const Bytes& bytes() const { return out_; }

 private:
  void PutLe(uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }

  Bytes out_;
};

// Bounds-checked little-endian reader. Every accessor fails with
// InvalidArgument once the input is exhausted.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  absl::StatusOr<uint8_t> U8();
  absl::StatusOr<uint16_t> U16();
  absl::StatusOr<uint32_t> U32();
  absl::StatusOr<uint64_t> U64();
  absl::StatusOr<ByteSpan> Take(size_t n);
  absl::StatusOr<ByteSpan> LengthPrefixed();
  ByteSpan Rest();

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }

 private:
  absl::StatusOr<uint64_t> Le(int width);

  ByteSpan data_;
  size_t pos_ = 0;
};

}  // namespace friendlink

#endif  // FRIENDLINK_BYTES_H_
