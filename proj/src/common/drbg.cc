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

#include "friendlink/drbg.h"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstring>
#include <stdexcept>

namespace friendlink {

namespace internal {
void CipherCtxDeleter::operator()(void* ctx) const {
  EVP_CIPHER_CTX_free(static_cast<EVP_CIPHER_CTX*>(ctx));
}
}  // namespace internal

namespace {

constexpr std::array<uint8_t, 16> kZeroIv{};

EVP_CIPHER_CTX* Raw(const internal::CipherCtxPtr& p) {
  return static_cast<EVP_CIPHER_CTX*>(p.get());
}

internal::CipherCtxPtr NewCtx() {
  internal::CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::bad_alloc();
  return ctx;
}

void KeyCtr(EVP_CIPHER_CTX* ctx, const uint8_t* key) {
  if (EVP_EncryptInit_ex(ctx, EVP_aes_128_ctr(), nullptr, key, kZeroIv.data()) != 1) {
    throw std::runtime_error("AES-CTR init failed");
  }
}

void CtrApply(EVP_CIPHER_CTX* ctx, const uint8_t* in, uint8_t* out, size_t n) {
  int len = 0;
  if (EVP_EncryptUpdate(ctx, out, &len, in, static_cast<int>(n)) != 1) {
    throw std::runtime_error("AES-CTR update failed");
  }
}

}  // namespace

SeedExpander::SeedExpander() : ctx_(NewCtx()) {}

void SeedExpander::Expand(std::span<const uint8_t, 16> seed, std::span<uint8_t> out) {
  std::memset(out.data(), 0, out.size());
  ExpandXor(seed, out);
}

void SeedExpander::ExpandXor(std::span<const uint8_t, 16> seed, std::span<uint8_t> out) {
  // CTR mode XORs the keystream into its input, so encrypting `out` in place
  // is exactly out ^= stream.
  KeyCtr(Raw(ctx_), seed.data());
  CtrApply(Raw(ctx_), out.data(), out.data(), out.size());
}

Drbg::Drbg(std::span<const uint8_t, 16> key) : ctx_(NewCtx()) {
  KeyCtr(Raw(ctx_), key.data());
}

Drbg Drbg::FromSeed(uint64_t seed) {
  uint8_t material[24] = {'f', 'l', '-', 'd', 'r', 'b', 'g', 0};
  for (int i = 0; i < 8; ++i) material[8 + i] = static_cast<uint8_t>(seed >> (8 * i));
  uint8_t digest[SHA256_DIGEST_LENGTH];
  SHA256(material, 16, digest);
  return Drbg(std::span<const uint8_t, 16>(digest, 16));
}

Drbg Drbg::FromEntropy() {
  std::array<uint8_t, 16> key;
  if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  return Drbg(key);
}

Drbg Drbg::Fork(std::string_view label) {
  Bytes material = RandomBytes(32);
  material.insert(material.end(), label.begin(), label.end());
  uint8_t digest[SHA256_DIGEST_LENGTH];
  SHA256(material.data(), material.size(), digest);
  return Drbg(std::span<const uint8_t, 16>(digest, 16));
}

void Drbg::Refill() {
  buffer_.fill(0);
  CtrApply(Raw(ctx_), buffer_.data(), buffer_.data(), buffer_.size());
  pos_ = 0;
}

void Drbg::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) Refill();
    size_t n = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, n);
    pos_ += n;
    done += n;
  }
}

Bytes Drbg::RandomBytes(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t Drbg::NextU64() {
  uint8_t b[8];
  Fill(b);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

uint64_t Drbg::Uniform(uint64_t bound) {
  // Rejection sampling keeps the result exactly uniform.
  const uint64_t limit = max() - (max() % bound);
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

double Drbg::UnitDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

}  // namespace friendlink
