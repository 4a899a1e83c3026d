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

#ifndef FRIENDLINK_DRBG_H_
#define FRIENDLINK_DRBG_H_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>

#include "friendlink/bytes.h"

namespace friendlink {

namespace internal {
struct CipherCtxDeleter {
  void operator()(void* ctx) const;
};
using CipherCtxPtr = std::unique_ptr<void, CipherCtxDeleter>;
}  // namespace internal

// Expands a 16-byte seed into an arbitrary-length pseudorandom stream
// (AES-128 in counter mode, zero IV). Keeps one cipher context alive so
// repeated expansions avoid reallocation.
class SeedExpander {
 public:
  SeedExpander();
  SeedExpander(SeedExpander&&) noexcept = default;
  SeedExpander& operator=(SeedExpander&&) noexcept = default;

  void Expand(std::span<const uint8_t, 16> seed, std::span<uint8_t> out);
  // XORs the expansion of `seed` into `out`.
  void ExpandXor(std::span<const uint8_t, 16> seed, std::span<uint8_t> out);

 private:
  internal::CipherCtxPtr ctx_;
  Bytes scratch_;
};

// Deterministic random bit generator. Seeded explicitly in simulation mode,
// or from the OS entropy pool otherwise. Satisfies
// std::uniform_random_bit_generator.
class Drbg {
 public:
  using result_type = uint64_t;

  static Drbg FromSeed(uint64_t seed);
  static Drbg FromEntropy();
  // Child generator whose stream depends on this generator's state and
  // `label`; advances this generator.
  Drbg Fork(std::string_view label);

  Drbg(Drbg&&) noexcept = default;
  Drbg& operator=(Drbg&&) noexcept = default;

  void Fill(std::span<uint8_t> out);
  Bytes RandomBytes(size_t n);
  template <size_t N>
  std::array<uint8_t, N> RandomArray() {
    std::array<uint8_t, N> out;
    Fill(out);
    return out;
  }

  uint64_t NextU64();
  // Uniform in [0, bound); bound > 0.
  uint64_t Uniform(uint64_t bound);
  // Uniform in [0, 1) with 53 bits of precision.
  double UnitDouble();
  bool Bernoulli(double p) { return UnitDouble() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  uint64_t operator()() { return NextU64(); }
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }

 private:
  explicit Drbg(std::span<const uint8_t, 16> key);
  void Refill();

  internal::CipherCtxPtr ctx_;
  std::array<uint8_t, 4096> buffer_{};
  size_t pos_ = 4096;
};

}  // namespace friendlink

#endif  // FRIENDLINK_DRBG_H_
