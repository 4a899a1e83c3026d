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

#ifndef FRIENDLINK_FSS_DPF_H_
#define FRIENDLINK_FSS_DPF_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/drbg.h"

namespace friendlink {

inline constexpr size_t kDpfSeedBytes = 16;
using DpfSeed = std::array<uint8_t, kDpfSeedBytes>;

// Shape of a p-party point function over 2^n slots of `output_len` bytes.
// The domain is laid out as a grid of rows x cols (rows takes the extra bit
// when n is odd).
struct DpfParams {
  uint32_t input_bits = 0;
  uint32_t output_len = 0;
  uint32_t party_count = 2;

  static absl::StatusOr<DpfParams> Create(uint32_t input_bits, uint32_t output_len,
                                          uint32_t party_count);

  uint64_t domain_size() const { return uint64_t{1} << input_bits; }
  uint64_t grid_rows() const { return uint64_t{1} << ((input_bits + 1) / 2); }
  uint64_t grid_cols() const { return uint64_t{1} << (input_bits / 2); }
  // Seeds per row and number of correction words: 2^(p-1).
  uint32_t words() const { return 1u << (party_count - 1); }
  size_t row_bytes() const { return grid_cols() * output_len; }

  friend bool operator==(const DpfParams&, const DpfParams&) = default;
};

// One party's share. For every row, `bits` selects which of the row's seeds
// (and matching correction words) the party folds into its output; seeds
// the party does not hold are zero.
struct DpfKey {
  DpfParams params;
  uint32_t party_index = 0;
  std::vector<uint8_t> bits;           // rows * words, each 0 or 1
  std::vector<DpfSeed> seeds;          // rows * words
  std::vector<Bytes> correction_words;  // words, each row_bytes() long

  bool bit(uint64_t row, uint32_t word) const { return bits[row * params.words() + word]; }
  const DpfSeed& seed(uint64_t row, uint32_t word) const {
    return seeds[row * params.words() + word];
  }

  // header (party u8, n u8, m u32, p u8), seeds row-major, correction
  // words, then the bit arrays packed one row per ceil(words/8) bytes.
  Bytes Serialize() const;
  static absl::StatusOr<DpfKey> Parse(ByteSpan wire);
  static size_t WireBytes(const DpfParams& params);

  friend bool operator==(const DpfKey&, const DpfKey&) = default;
};

// Splits the point function (alpha -> beta, zero elsewhere) into
// party_count keys.
absl::StatusOr<std::vector<DpfKey>> DpfGen(uint64_t alpha, ByteSpan beta,
                                           const DpfParams& params, Drbg& rng);

// This party's share of f(x).
absl::StatusOr<Bytes> DpfEval(const DpfKey& key, uint64_t x);

// Seed-expands one grid row: the party's shares of every column in `row`.
void DpfEvalRow(const DpfKey& key, uint64_t row, SeedExpander& prg, std::span<uint8_t> out);

}  // namespace friendlink

#endif  // FRIENDLINK_FSS_DPF_H_
