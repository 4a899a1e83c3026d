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

#include "friendlink/crypto/symmetric.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

namespace friendlink {

namespace {

constexpr char kIntegrityFailure[] = "integrity failure";

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;

std::array<uint8_t, 32> MacKey(const SymmetricKey& key) {
  static constexpr char kLabel[] = "friendlink/sym-mac";
  Bytes material(kLabel, kLabel + sizeof(kLabel) - 1);
  material.insert(material.end(), key.key_bytes.begin(), key.key_bytes.end());
  std::array<uint8_t, 32> out;
  SHA256(material.data(), material.size(), out.data());
  return out;
}

std::array<uint8_t, kSymTagBytes> Tag(const SymmetricKey& key, ByteSpan plaintext) {
  const auto mac_key = MacKey(key);
  uint8_t full[EVP_MAX_MD_SIZE];
  unsigned int full_len = 0;
  HMAC(EVP_sha256(), mac_key.data(), static_cast<int>(mac_key.size()), plaintext.data(),
       plaintext.size(), full, &full_len);
  std::array<uint8_t, kSymTagBytes> tag;
  std::copy_n(full, kSymTagBytes, tag.begin());
  return tag;
}

}  // namespace

Bytes SymEncrypt(const SymmetricKey& key, ByteSpan plaintext) {
  const auto tag = Tag(key, plaintext);
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, key.key_bytes.data(),
                                 tag.data()) != 1) {
    throw std::runtime_error("AES-CBC init failed");
  }
  Bytes out(SymCiphertextLength(plaintext.size()));
  int len = 0;
  int total = 0;
  if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1) {
    throw std::runtime_error("AES-CBC update failed");
  }
  total = len;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + total, &len) != 1) {
    throw std::runtime_error("AES-CBC final failed");
  }
  total += len;
  std::copy(tag.begin(), tag.end(), out.begin() + total);
  return out;
}

absl::StatusOr<Bytes> SymDecrypt(const SymmetricKey& key, ByteSpan ciphertext) {
  if (ciphertext.size() < kAesBlockBytes + kSymTagBytes ||
      (ciphertext.size() - kSymTagBytes) % kAesBlockBytes != 0) {
    return absl::InvalidArgumentError("malformed symmetric ciphertext length");
  }
  const ByteSpan body = ciphertext.first(ciphertext.size() - kSymTagBytes);
  const ByteSpan tag = ciphertext.last(kSymTagBytes);

  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, key.key_bytes.data(),
                                 tag.data()) != 1) {
    throw std::runtime_error("AES-CBC init failed");
  }
  Bytes out(body.size());
  int len = 0;
  if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, body.data(), static_cast<int>(body.size())) !=
      1) {
    return absl::DataLossError(kIntegrityFailure);
  }
  int total = len;
  // Bad padding is how a wrong key usually shows up.
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + total, &len) != 1) {
    return absl::DataLossError(kIntegrityFailure);
  }
  total += len;
  out.resize(total);

  const auto expected = Tag(key, out);
  if (CRYPTO_memcmp(expected.data(), tag.data(), kSymTagBytes) != 0) {
    return absl::DataLossError(kIntegrityFailure);
  }
  return out;
}

bool IsIntegrityFailure(const absl::Status& status) {
  return status.code() == absl::StatusCode::kDataLoss;
}

}  // namespace friendlink
