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

#include "friendlink/fss/dpf.h"

#include <bit>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"

namespace friendlink {

namespace {

constexpr uint32_t kMaxInputBits = 24;
constexpr uint32_t kMaxParties = 8;

// All p-bit vectors of the given weight parity, in a random order.
std::vector<uint32_t> ShuffledColumns(uint32_t party_count, bool odd, Drbg& rng) {
  std::vector<uint32_t> cols;
  for (uint32_t v = 0; v < (1u << party_count); ++v) {
    if ((std::popcount(v) & 1) == static_cast<int>(odd)) cols.push_back(v);
  }
  rng.Shuffle(std::span<uint32_t>(cols));
  return cols;
}

}  // namespace

absl::StatusOr<DpfParams> DpfParams::Create(uint32_t input_bits, uint32_t output_len,
                                            uint32_t party_count) {
  if (input_bits < 1 || input_bits > kMaxInputBits) {
    return absl::InvalidArgumentError(absl::StrCat("input_bits must be in [1, ", kMaxInputBits, "]"));
  }
  if (output_len < 1) return absl::InvalidArgumentError("output_len must be positive");
  if (party_count < 2 || party_count > kMaxParties) {
    return absl::InvalidArgumentError(absl::StrCat("party_count must be in [2, ", kMaxParties, "]"));
  }
  return DpfParams{input_bits, output_len, party_count};
}

absl::StatusOr<std::vector<DpfKey>> DpfGen(uint64_t alpha, ByteSpan beta,
                                           const DpfParams& params, Drbg& rng) {
  FL_RETURN_IF_ERROR(DpfParams::Create(params.input_bits, params.output_len, params.party_count)
                         .status());
  if (alpha >= params.domain_size()) return absl::OutOfRangeError("alpha outside the domain");
  if (beta.size() != params.output_len) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta is ", beta.size(), " bytes, expected ", params.output_len));
  }
  const uint64_t rows = params.grid_rows();
  const uint32_t words = params.words();
  const uint32_t p = params.party_count;
  const uint64_t special_row = alpha / params.grid_cols();
  const uint64_t special_col = alpha % params.grid_cols();

  std::vector<DpfKey> keys(p);
  for (uint32_t i = 0; i < p; ++i) {
    keys[i].params = params;
    keys[i].party_index = i;
    keys[i].bits.assign(rows * words, 0);
    keys[i].seeds.assign(rows * words, DpfSeed{});
  }

  // Row seeds, handed to exactly the parties whose bit is set.
  std::vector<DpfSeed> seeds(rows * words);
  for (uint64_t r = 0; r < rows; ++r) {
    std::vector<uint32_t> cols = ShuffledColumns(p, r == special_row, rng);
    for (uint32_t j = 0; j < words; ++j) {
      DpfSeed& s = seeds[r * words + j];
      rng.Fill(s);
      for (uint32_t i = 0; i < p; ++i) {
        if ((cols[j] >> i) & 1) {
          keys[i].bits[r * words + j] = 1;
          keys[i].seeds[r * words + j] = s;
        }
      }
    }
  }

  // Every column weight on the special row is odd, so the parties' outputs
  // there combine to XOR_j (G(s_j) ^ cw_j). Pick all but the last word at
  // random and solve for the last so that sum equals beta at the target
  // column and zero elsewhere.
  const size_t row_bytes = params.row_bytes();
  std::vector<Bytes> cw(words, Bytes(row_bytes));
  Bytes last(row_bytes, 0);
  std::copy(beta.begin(), beta.end(), last.begin() + special_col * params.output_len);
  SeedExpander prg;
  Bytes expanded(row_bytes);
  for (uint32_t j = 0; j < words; ++j) {
    prg.Expand(seeds[special_row * words + j], expanded);
    XorInto(last, expanded);
    if (j + 1 < words) {
      rng.Fill(cw[j]);
      XorInto(last, cw[j]);
    }
  }
  cw[words - 1] = std::move(last);
  for (DpfKey& k : keys) k.correction_words = cw;
  return keys;
}

void DpfEvalRow(const DpfKey& key, uint64_t row, SeedExpander& prg, std::span<uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (uint32_t j = 0; j < key.params.words(); ++j) {
    if (!key.bit(row, j)) continue;
    prg.ExpandXor(key.seed(row, j), out);
    XorInto(out, key.correction_words[j]);
  }
}

absl::StatusOr<Bytes> DpfEval(const DpfKey& key, uint64_t x) {
  if (x >= key.params.domain_size()) return absl::OutOfRangeError("x outside the domain");
  const uint64_t cols = key.params.grid_cols();
  const uint32_t m = key.params.output_len;
  SeedExpander prg;
  Bytes row(key.params.row_bytes());
  DpfEvalRow(key, x / cols, prg, row);
  auto begin = row.begin() + (x % cols) * m;
  return Bytes(begin, begin + m);
}

size_t DpfKey::WireBytes(const DpfParams& params) {
  const size_t rows = params.grid_rows();
  const size_t words = params.words();
  return 7 + rows * words * kDpfSeedBytes + words * params.row_bytes() + rows * ((words + 7) / 8);
}

Bytes DpfKey::Serialize() const {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(party_index));
  w.PutU8(static_cast<uint8_t>(params.input_bits));
  w.PutU32(params.output_len);
  w.PutU8(static_cast<uint8_t>(params.party_count));
  for (const DpfSeed& s : seeds) w.PutBytes(s);
  for (const Bytes& c : correction_words) w.PutBytes(c);
  const uint32_t words = params.words();
  for (uint64_t r = 0; r < params.grid_rows(); ++r) {
    Bytes packed((words + 7) / 8, 0);
    for (uint32_t j = 0; j < words; ++j) {
      if (bit(r, j)) packed[j / 8] |= static_cast<uint8_t>(1u << (j % 8));
    }
    w.PutBytes(packed);
  }
  return std::move(w).Take();
}

absl::StatusOr<DpfKey> DpfKey::Parse(ByteSpan wire) {
  ByteReader r(wire);
  DpfKey key;
  FL_ASSIGN_OR_RETURN(uint8_t party, r.U8());
  FL_ASSIGN_OR_RETURN(uint8_t n, r.U8());
  FL_ASSIGN_OR_RETURN(uint32_t m, r.U32());
  FL_ASSIGN_OR_RETURN(uint8_t p, r.U8());
  FL_ASSIGN_OR_RETURN(key.params, DpfParams::Create(n, m, p));
  if (party >= p) return absl::InvalidArgumentError("party index out of range");
  if (wire.size() != WireBytes(key.params)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key is ", wire.size(), " bytes, expected ", WireBytes(key.params)));
  }
  key.party_index = party;
  const uint64_t rows = key.params.grid_rows();
  const uint32_t words = key.params.words();
  key.seeds.resize(rows * words);
  for (DpfSeed& s : key.seeds) {
    FL_ASSIGN_OR_RETURN(ByteSpan raw, r.Take(kDpfSeedBytes));
    std::copy(raw.begin(), raw.end(), s.begin());
  }
  key.correction_words.resize(words);
  for (Bytes& c : key.correction_words) {
    FL_ASSIGN_OR_RETURN(ByteSpan raw, r.Take(key.params.row_bytes()));
    c.assign(raw.begin(), raw.end());
  }
  key.bits.resize(rows * words);
  for (uint64_t row = 0; row < rows; ++row) {
    FL_ASSIGN_OR_RETURN(ByteSpan packed, r.Take((words + 7) / 8));
    for (uint32_t j = 0; j < words; ++j) {
      key.bits[row * words + j] = (packed[j / 8] >> (j % 8)) & 1;
    }
  }
  return key;
}

}  // namespace friendlink
