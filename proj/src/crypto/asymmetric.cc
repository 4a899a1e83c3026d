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

#include "friendlink/crypto/asymmetric.h"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>
#include <openssl/rsa.h>

#include <stdexcept>

#include "absl/status/status.h"

namespace friendlink {

namespace internal {
void PkeyDeleter::operator()(void* pkey) const { EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey)); }
}  // namespace internal

namespace {

constexpr unsigned long kPublicExponent = 65537;

struct BnFree {
  void operator()(BIGNUM* b) const { BN_clear_free(b); }
};
struct BnCtxFree {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct PkeyCtxFree {
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
};
struct MdCtxFree {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
struct ParamBldFree {
  void operator()(OSSL_PARAM_BLD* b) const { OSSL_PARAM_BLD_free(b); }
};
struct ParamFree {
  void operator()(OSSL_PARAM* p) const { OSSL_PARAM_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnFree>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxFree>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxFree>;

void Check(int rc, const char* what) {
  if (rc != 1) throw std::runtime_error(what);
}

BnPtr NewBn() {
  BnPtr b(BN_new());
  if (!b) throw std::bad_alloc();
  return b;
}

EVP_PKEY* Raw(const std::shared_ptr<void>& p) { return static_cast<EVP_PKEY*>(p.get()); }

std::shared_ptr<void> FromData(OSSL_PARAM_BLD* bld, int selection) {
  std::unique_ptr<OSSL_PARAM, ParamFree> params(OSSL_PARAM_BLD_to_param(bld));
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
  if (!params || !ctx) throw std::runtime_error("RSA param build failed");
  Check(EVP_PKEY_fromdata_init(ctx.get()), "EVP_PKEY_fromdata_init");
  EVP_PKEY* pkey = nullptr;
  Check(EVP_PKEY_fromdata(ctx.get(), &pkey, selection, params.get()), "EVP_PKEY_fromdata");
  return std::shared_ptr<void>(pkey, internal::PkeyDeleter());
}

std::shared_ptr<void> PublicFromComponents(const BIGNUM* n, const BIGNUM* e) {
  std::unique_ptr<OSSL_PARAM_BLD, ParamBldFree> bld(OSSL_PARAM_BLD_new());
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n), "push n");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e), "push e");
  return FromData(bld.get(), EVP_PKEY_PUBLIC_KEY);
}

std::array<uint8_t, kPublicKeyWireBytes> EncodePublic(const BIGNUM* n, const BIGNUM* e) {
  std::array<uint8_t, kPublicKeyWireBytes> wire{};
  Check(BN_bn2binpad(n, wire.data(), kRsaModulusBytes) == kRsaModulusBytes ? 1 : 0, "n width");
  Check(BN_bn2binpad(e, wire.data() + kRsaModulusBytes, 4) == 4 ? 1 : 0, "e width");
  return wire;
}

// Smallest probable prime >= a random odd `bits`-bit start, with the top two
// bits set so the product of two such primes has exactly 2*bits bits.
BnPtr DrawPrime(Drbg& rng, int bits, const BIGNUM* e, BN_CTX* ctx) {
  Bytes raw = rng.RandomBytes(bits / 8);
  raw[0] |= 0xC0;
  raw.back() |= 0x01;
  BnPtr p(BN_bin2bn(raw.data(), static_cast<int>(raw.size()), nullptr));
  BnPtr pm1 = NewBn();
  BnPtr g = NewBn();
  for (;;) {
    Check(BN_sub(pm1.get(), p.get(), BN_value_one()), "BN_sub");
    Check(BN_gcd(g.get(), pm1.get(), e, ctx), "BN_gcd");
    if (BN_is_one(g.get()) && BN_check_prime(p.get(), ctx, nullptr) == 1) return p;
    Check(BN_add_word(p.get(), 2), "BN_add_word");
  }
}

}  // namespace

absl::StatusOr<PublicKey> PublicKey::Parse(ByteSpan wire) {
  if (wire.size() != kPublicKeyWireBytes) {
    return absl::InvalidArgumentError("public key must be 160 bytes");
  }
  for (size_t i = kRsaModulusBytes + 4; i < kPublicKeyWireBytes; ++i) {
    if (wire[i] != 0) return absl::InvalidArgumentError("public key padding not zero");
  }
  BnPtr n(BN_bin2bn(wire.data(), kRsaModulusBytes, nullptr));
  BnPtr e(BN_bin2bn(wire.data() + kRsaModulusBytes, 4, nullptr));
  if (BN_num_bits(n.get()) != static_cast<int>(kRsaModulusBits) || !BN_is_odd(n.get())) {
    return absl::InvalidArgumentError("public key modulus is not a 1024-bit odd integer");
  }
  if (BN_cmp(e.get(), BN_value_one()) <= 0 || !BN_is_odd(e.get())) {
    return absl::InvalidArgumentError("public key exponent invalid");
  }
  std::array<uint8_t, kPublicKeyWireBytes> copy;
  std::copy(wire.begin(), wire.end(), copy.begin());
  return PublicKey(PublicFromComponents(n.get(), e.get()), copy);
}

KeyPair KeyPair::Generate(Drbg& rng) {
  BnCtxPtr ctx(BN_CTX_new());
  BnPtr e = NewBn();
  Check(BN_set_word(e.get(), kPublicExponent), "BN_set_word");

  BnPtr p, q;
  do {
    p = DrawPrime(rng, kRsaModulusBits / 2, e.get(), ctx.get());
    q = DrawPrime(rng, kRsaModulusBits / 2, e.get(), ctx.get());
  } while (BN_cmp(p.get(), q.get()) == 0);
  if (BN_cmp(p.get(), q.get()) < 0) std::swap(p, q);

  BnPtr n = NewBn(), pm1 = NewBn(), qm1 = NewBn(), phi = NewBn(), g = NewBn(), lambda = NewBn(),
        rem = NewBn(), d = NewBn(), dmp1 = NewBn(), dmq1 = NewBn(), iqmp = NewBn();
  Check(BN_mul(n.get(), p.get(), q.get(), ctx.get()), "n");
  Check(BN_sub(pm1.get(), p.get(), BN_value_one()), "p-1");
  Check(BN_sub(qm1.get(), q.get(), BN_value_one()), "q-1");
  Check(BN_mul(phi.get(), pm1.get(), qm1.get(), ctx.get()), "phi");
  Check(BN_gcd(g.get(), pm1.get(), qm1.get(), ctx.get()), "gcd");
  Check(BN_div(lambda.get(), rem.get(), phi.get(), g.get(), ctx.get()), "lcm");
  if (!BN_mod_inverse(d.get(), e.get(), lambda.get(), ctx.get())) {
    throw std::runtime_error("public exponent not invertible");
  }
  Check(BN_mod(dmp1.get(), d.get(), pm1.get(), ctx.get()), "dmp1");
  Check(BN_mod(dmq1.get(), d.get(), qm1.get(), ctx.get()), "dmq1");
  if (!BN_mod_inverse(iqmp.get(), q.get(), p.get(), ctx.get())) {
    throw std::runtime_error("q not invertible mod p");
  }

  std::unique_ptr<OSSL_PARAM_BLD, ParamBldFree> bld(OSSL_PARAM_BLD_new());
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n.get()), "push n");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e.get()), "push e");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_D, d.get()), "push d");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR1, p.get()), "push p");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR2, q.get()), "push q");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT1, dmp1.get()), "dmp1");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT2, dmq1.get()), "dmq1");
  Check(OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_COEFFICIENT1, iqmp.get()), "iqmp");
  auto priv = FromData(bld.get(), EVP_PKEY_KEYPAIR);

  PublicKey pub(PublicFromComponents(n.get(), e.get()), EncodePublic(n.get(), e.get()));
  return KeyPair(std::move(priv), std::move(pub));
}

Bytes KeyPair::Sign(ByteSpan message) const {
  MdCtxPtr md(EVP_MD_CTX_new());
  Check(EVP_DigestSignInit(md.get(), nullptr, EVP_sha256(), nullptr, Raw(private_)),
        "EVP_DigestSignInit");
  size_t len = kSignatureBytes;
  Bytes sig(len);
  Check(EVP_DigestSign(md.get(), sig.data(), &len, message.data(), message.size()),
        "EVP_DigestSign");
  sig.resize(len);
  return sig;
}

absl::StatusOr<SymmetricKey> KeyPair::UnwrapKey(ByteSpan wrapped) const {
  if (wrapped.size() != kWrappedKeyBytes) {
    return absl::InvalidArgumentError("wrapped key must be 128 bytes");
  }
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(Raw(private_), nullptr));
  Check(EVP_PKEY_decrypt_init(ctx.get()), "EVP_PKEY_decrypt_init");
  Check(EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING), "oaep");
  uint8_t out[kRsaModulusBytes];
  size_t out_len = sizeof(out);
  if (EVP_PKEY_decrypt(ctx.get(), out, &out_len, wrapped.data(), wrapped.size()) != 1 ||
      out_len != kSymKeyBytes) {
    return absl::PermissionDeniedError("key unwrap failed");
  }
  SymmetricKey key;
  std::copy_n(out, kSymKeyBytes, key.key_bytes.begin());
  return key;
}

Bytes WrapKey(const PublicKey& peer, const SymmetricKey& key) {
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(Raw(peer.pkey_), nullptr));
  Check(EVP_PKEY_encrypt_init(ctx.get()), "EVP_PKEY_encrypt_init");
  Check(EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING), "oaep");
  size_t len = kWrappedKeyBytes;
  Bytes out(len);
  Check(EVP_PKEY_encrypt(ctx.get(), out.data(), &len, key.key_bytes.data(), key.key_bytes.size()),
        "EVP_PKEY_encrypt");
  out.resize(len);
  return out;
}

bool VerifySignature(const PublicKey& key, ByteSpan message, ByteSpan signature) {
  MdCtxPtr md(EVP_MD_CTX_new());
  if (EVP_DigestVerifyInit(md.get(), nullptr, EVP_sha256(), nullptr, Raw(key.pkey_)) != 1) {
    return false;
  }
  return EVP_DigestVerify(md.get(), signature.data(), signature.size(), message.data(),
                          message.size()) == 1;
}

}  // namespace friendlink
