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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <set>

#include "friendlink/fss/checkin.h"
#include "friendlink/fss/database.h"
#include "friendlink/fss/dpf.h"
#include "testing/stats.h"

namespace friendlink {
namespace {

DpfParams Params(uint32_t n, uint32_t m, uint32_t p) { return *DpfParams::Create(n, m, p); }

ShareDatabase Combined(std::span<const DpfKey> keys) {
  ShareDatabase out(keys.front().params);
  for (const DpfKey& k : keys) EXPECT_TRUE(out.XorWith(EvalFull(k)).ok());
  return out;
}

// The point-function table built directly, slot by slot.
ShareDatabase PointTable(const DpfParams& params, uint64_t alpha, ByteSpan beta) {
  ShareDatabase t(params);
  std::copy(beta.begin(), beta.end(), t.mutable_slot(alpha).begin());
  return t;
}

double OnesFraction(ByteSpan data) {
  size_t ones = 0;
  for (uint8_t b : data) ones += std::popcount(b);
  return static_cast<double>(ones) / (8.0 * data.size());
}

TEST(DpfParams, GridShape) {
  DpfParams p = Params(11, 187, 2);
  EXPECT_EQ(p.domain_size(), 2048u);
  EXPECT_EQ(p.grid_rows(), 64u);
  EXPECT_EQ(p.grid_cols(), 32u);
  for (uint32_t n = 1; n <= 16; ++n) {
    DpfParams q = Params(n, 1, 3);
    EXPECT_EQ(q.grid_rows() * q.grid_cols(), q.domain_size());
    EXPECT_EQ(q.words(), 4u);
  }
  EXPECT_FALSE(DpfParams::Create(0, 4, 2).ok());
  EXPECT_FALSE(DpfParams::Create(8, 0, 2).ok());
  EXPECT_FALSE(DpfParams::Create(8, 4, 1).ok());
}

TEST(DpfGen, SmallExampleCombinesToPointTable) {
  Drbg rng = Drbg::FromSeed(1100);
  DpfParams p = Params(2, 1, 2);
  auto keys = DpfGen(1, Bytes{0x5A}, p, rng);
  ASSERT_TRUE(keys.ok());
  EXPECT_EQ(Combined(*keys).bytes(), (Bytes{0x00, 0x5A, 0x00, 0x00}));
}

TEST(DpfGen, ZeroBetaCombinesToZero) {
  Drbg rng = Drbg::FromSeed(1101);
  DpfParams p = Params(6, 8, 3);
  auto keys = DpfGen(17, Bytes(8, 0), p, rng);
  EXPECT_TRUE(Combined(*keys).IsZero());
}

TEST(DpfGen, RejectsBadArguments) {
  Drbg rng = Drbg::FromSeed(1102);
  DpfParams p = Params(4, 2, 2);
  EXPECT_EQ(DpfGen(16, Bytes(2), p, rng).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(DpfGen(3, Bytes(3), p, rng).ok());
}

// Brute force: every point evaluated with every key individually.
TEST(DpfEval, ThreePartyPointwiseMatchesTable) {
  Drbg rng = Drbg::FromSeed(1103);
  DpfParams p = Params(4, 5, 3);
  for (int trial = 0; trial < 20; ++trial) {
    uint64_t alpha = rng.Uniform(16);
    Bytes beta = rng.RandomBytes(5);
    auto keys = DpfGen(alpha, beta, p, rng);
    for (uint64_t x = 0; x < 16; ++x) {
      Bytes sum(5, 0);
      for (const DpfKey& k : *keys) XorInto(sum, *DpfEval(k, x));
      EXPECT_EQ(sum, x == alpha ? beta : Bytes(5, 0)) << "x=" << x;
    }
  }
}

struct Shape {
  uint32_t n, m, p;
};

class CorrectnessTest : public ::testing::TestWithParam<Shape> {};

TEST_P(CorrectnessTest, CombinedDatabaseIsPointFunction) {
  const Shape s = GetParam();
  DpfParams p = Params(s.n, s.m, s.p);
  Drbg rng = Drbg::FromSeed(1200 + s.n * 10 + s.p);
  for (int trial = 0; trial < 5; ++trial) {
    uint64_t alpha = rng.Uniform(p.domain_size());
    Bytes beta = rng.RandomBytes(s.m);
    auto keys = DpfGen(alpha, beta, p, rng);
    ASSERT_TRUE(keys.ok());
    ASSERT_EQ(keys->size(), s.p);
    EXPECT_EQ(Combined(*keys), PointTable(p, alpha, beta));
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, CorrectnessTest,
                         ::testing::Values(Shape{1, 3, 2}, Shape{3, 7, 3}, Shape{5, 2, 2},
                                           Shape{8, 16, 3}, Shape{11, 4, 2}, Shape{12, 9, 3},
                                           Shape{9, 1, 4}));

TEST(EvalFull, AgreesWithPointwiseEval) {
  Drbg rng = Drbg::FromSeed(1104);
  DpfParams p = Params(11, 12, 3);
  auto keys = DpfGen(999, rng.RandomBytes(12), p, rng);
  ShareDatabase full = EvalFull((*keys)[1]);
  EXPECT_EQ(full.slots(), 2048u);
  for (int i = 0; i < 100; ++i) {
    uint64_t x = rng.Uniform(2048);
    Bytes slot(full.slot(x).begin(), full.slot(x).end());
    EXPECT_EQ(*DpfEval((*keys)[1], x), slot);
  }
  EXPECT_EQ(*DpfEval((*keys)[1], 5), *DpfEval((*keys)[1], 5));
  EXPECT_FALSE(DpfEval((*keys)[1], 2048).ok());
}

TEST(EvalFull, SinglePartyOutputIsBitBalanced) {
  Drbg rng = Drbg::FromSeed(1105);
  DpfParams p = Params(10, 16, 2);
  auto keys = DpfGen(3, rng.RandomBytes(16), p, rng);
  for (const DpfKey& k : *keys) {
    const double f = OnesFraction(EvalFull(k).bytes());  // 131072 bits
    EXPECT_NEAR(f, 0.5, 0.05);
  }
}

// For any strict subset of keys, the slot at alpha is not beta and the
// partial database looks balanced.
TEST(Collusion, StrictSubsetsRevealNothingUseful) {
  Drbg rng = Drbg::FromSeed(1106);
  int differs = 0;
  constexpr int kTrials = 100;
  for (int trial = 0; trial < kTrials; ++trial) {
    const uint32_t parties = 2 + trial % 2;
    DpfParams p = Params(6, 24, parties);
    uint64_t alpha = rng.Uniform(p.domain_size());
    Bytes beta = rng.RandomBytes(24);
    auto keys = DpfGen(alpha, beta, p, rng);
    std::vector<DpfKey> subset(keys->begin(), keys->end());
    subset.erase(subset.begin() + rng.Uniform(parties));
    ShareDatabase partial = Combined(subset);
    Bytes at_alpha(partial.slot(alpha).begin(), partial.slot(alpha).end());
    differs += at_alpha != beta;
    ASSERT_NEAR(OnesFraction(partial.bytes()), 0.5, 0.05);
  }
  EXPECT_EQ(differs, kTrials);
}

TEST(Determinism, SameSeedSameKeys) {
  DpfParams p = Params(7, 10, 3);
  Drbg a = Drbg::FromSeed(1107), b = Drbg::FromSeed(1107);
  Bytes beta(10, 0x33);
  EXPECT_EQ(*DpfGen(40, beta, p, a), *DpfGen(40, beta, p, b));
}

TEST(KeyWire, RoundTripsAndRejectsMalformed) {
  Drbg rng = Drbg::FromSeed(1108);
  for (Shape s : {Shape{11, 187, 2}, Shape{5, 3, 3}, Shape{4, 1, 5}}) {
    DpfParams p = Params(s.n, s.m, s.p);
    auto keys = DpfGen(1, rng.RandomBytes(s.m), p, rng);
    for (const DpfKey& k : *keys) {
      Bytes wire = k.Serialize();
      EXPECT_EQ(wire.size(), DpfKey::WireBytes(p));
      auto back = DpfKey::Parse(wire);
      ASSERT_TRUE(back.ok()) << back.status();
      EXPECT_EQ(*back, k);
    }
  }
  Bytes wire = (*DpfGen(1, Bytes(3), Params(5, 3, 3), rng))[0].Serialize();
  EXPECT_FALSE(DpfKey::Parse(ByteSpan(wire).first(wire.size() - 1)).ok());
  wire[0] = 3;  // party index >= party count
  EXPECT_FALSE(DpfKey::Parse(wire).ok());
}

// The structural property behind correctness: each row's bit columns across
// all parties are exactly the even-weight vectors, odd on alpha's row.
TEST(KeyStructure, ColumnParityMarksTheSpecialRow) {
  Drbg rng = Drbg::FromSeed(1109);
  DpfParams p = Params(8, 4, 3);
  const uint64_t alpha = 0x9C;
  auto keys = DpfGen(alpha, Bytes(4, 1), p, rng);
  for (uint64_t r = 0; r < p.grid_rows(); ++r) {
    std::set<uint32_t> columns;
    for (uint32_t j = 0; j < p.words(); ++j) {
      uint32_t v = 0;
      for (uint32_t i = 0; i < p.party_count; ++i) v |= (*keys)[i].bit(r, j) << i;
      columns.insert(v);
      EXPECT_EQ(std::popcount(v) % 2, r == alpha / p.grid_cols() ? 1 : 0);
    }
    EXPECT_EQ(columns.size(), p.words());
  }
}

TEST(Epoch, AccumulateIsOrderIndependentAndSelfCancelling) {
  Drbg rng = Drbg::FromSeed(1110);
  DpfParams p = Params(8, 6, 2);
  auto k1 = DpfGen(5, rng.RandomBytes(6), p, rng);
  auto k2 = DpfGen(77, rng.RandomBytes(6), p, rng);
  Epoch a(1, p), b(1, p), twice(1, p);
  ASSERT_TRUE(a.Accumulate((*k1)[0]).ok());
  ASSERT_TRUE(a.Accumulate((*k2)[0]).ok());
  ASSERT_TRUE(b.Accumulate((*k2)[0]).ok());
  ASSERT_TRUE(b.Accumulate((*k1)[0]).ok());
  EXPECT_EQ(a.delta(), b.delta());
  ASSERT_TRUE(twice.Accumulate((*k1)[0]).ok());
  ASSERT_TRUE(twice.Accumulate((*k1)[0]).ok());
  EXPECT_TRUE(twice.delta().IsZero());
}

TEST(Epoch, LinearityOfAccumulation) {
  Drbg rng = Drbg::FromSeed(1111);
  DpfParams p = Params(9, 5, 3);
  auto k1 = DpfGen(100, rng.RandomBytes(5), p, rng);
  auto k2 = DpfGen(400, rng.RandomBytes(5), p, rng);
  Epoch e(3, p);
  ASSERT_TRUE(e.Accumulate((*k1)[2]).ok());
  ASSERT_TRUE(e.Accumulate((*k2)[2]).ok());
  for (uint64_t x = 0; x < p.domain_size(); ++x) {
    Bytes expected = *DpfEval((*k1)[2], x);
    XorInto(expected, *DpfEval((*k2)[2], x));
    ASSERT_EQ(Bytes(e.delta().slot(x).begin(), e.delta().slot(x).end()), expected);
  }
}

TEST(Epoch, StateMachine) {
  Drbg rng = Drbg::FromSeed(1112);
  DpfParams p = Params(4, 3, 2);
  auto keys = DpfGen(2, Bytes(3, 7), p, rng);
  Epoch e(9, p);
  EXPECT_FALSE(e.Combine({}).ok());
  ASSERT_TRUE(e.Seal().ok());
  EXPECT_EQ(e.state(), EpochState::kSealed);
  EXPECT_EQ(e.Accumulate((*keys)[0]).code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(e.Seal().ok());
  std::vector<ShareDatabase> wrong = {ShareDatabase(32, 3)};
  EXPECT_FALSE(e.Combine(wrong).ok());
  EXPECT_TRUE(e.Combine({}).ok());
  EXPECT_EQ(e.state(), EpochState::kCombined);
}

TEST(Epoch, TwoServersThreeClientsAgree) {
  Drbg rng = Drbg::FromSeed(1113);
  DpfParams p = Params(8, 10, 2);
  Epoch s0(1, p), s1(1, p);
  ShareDatabase expected(p);
  for (uint64_t alpha : {3u, 100u, 255u}) {
    Bytes beta = rng.RandomBytes(10);
    std::copy(beta.begin(), beta.end(), expected.mutable_slot(alpha).begin());
    auto keys = DpfGen(alpha, beta, p, rng);
    ASSERT_TRUE(s0.Accumulate((*keys)[0]).ok());
    ASSERT_TRUE(s1.Accumulate((*keys)[1]).ok());
  }
  ASSERT_TRUE(s0.Seal().ok());
  ASSERT_TRUE(s1.Seal().ok());
  std::vector<ShareDatabase> to0 = {s1.delta()}, to1 = {s0.delta()};
  auto out0 = s0.Combine(to0);
  auto out1 = s1.Combine(to1);
  EXPECT_EQ(*out0, expected);
  EXPECT_EQ(out0->bytes(), out1->bytes());
}

TEST(Epoch, NoClientsGivesZeroDatabase) {
  DpfParams p = Params(6, 4, 3);
  Epoch a(1, p), b(1, p), c(1, p);
  for (Epoch* e : {&a, &b, &c}) ASSERT_TRUE(e->Seal().ok());
  std::vector<ShareDatabase> rest = {b.delta(), c.delta()};
  EXPECT_TRUE(a.Combine(rest)->IsZero());
}

TEST(Slots, EncodeDecode) {
  Bytes msg(160, 'c');
  auto slot = EncodeSlot(msg, 187);
  ASSERT_TRUE(slot.ok());
  EXPECT_EQ(slot->size(), 187u);
  DecodedSlot d = DecodeSlot(*slot);
  EXPECT_EQ(d.kind, SlotKind::kMessage);
  EXPECT_EQ(d.message, msg);
  EXPECT_EQ(DecodeSlot(Bytes(187, 0)).kind, SlotKind::kEmpty);
  EXPECT_TRUE(EncodeSlot(Bytes(185, 1), 187).ok());
  EXPECT_FALSE(EncodeSlot(Bytes(186, 1), 187).ok());
  EXPECT_FALSE(EncodeSlot({}, 187).ok());
  Bytes bad = *slot;
  bad[180] = 1;  // data past the declared length
  EXPECT_EQ(DecodeSlot(bad).kind, SlotKind::kGarbled);
  bad = *slot;
  bad[1] = 0xFF;  // declared length too large
  EXPECT_EQ(DecodeSlot(bad).kind, SlotKind::kGarbled);
}

TEST(CheckIn, RecoveredAfterCombination) {
  Drbg rng = Drbg::FromSeed(1114);
  DpfParams p = Params(11, 187, 2);
  Bytes msg(160, 'L');
  auto c = ClientCheckIn(msg, p, rng);
  ASSERT_TRUE(c.ok());
  ShareDatabase db = Combined(c->keys);
  DecodedSlot d = DecodeSlot(db.slot(c->index));
  EXPECT_EQ(d.kind, SlotKind::kMessage);
  EXPECT_EQ(d.message, msg);
  EXPECT_FALSE(ClientCheckIn(Bytes(186, 1), p, rng).ok());
}

TEST(CheckIn, IndexIsUniform) {
  Drbg rng = Drbg::FromSeed(1115);
  DpfParams p = Params(6, 3, 2);
  std::vector<uint64_t> buckets(64, 0);
  // Only the index draw matters here; reuse the generator the client uses.
  for (int i = 0; i < 10000; ++i) ++buckets[rng.Uniform(p.domain_size())];
  EXPECT_LT(testing::ChiSquareUniform(buckets), testing::kChiSquare99Dof63);

  std::vector<uint64_t> via_client(64, 0);
  for (int i = 0; i < 2000; ++i) ++via_client[ClientCheckIn(Bytes{1}, p, rng)->index];
  EXPECT_LT(testing::ChiSquareUniform(via_client), testing::kChiSquare99Dof63);
}

// Equal-length writes cancel the length prefix, so the slot is always
// flagged. Unequal lengths may XOR into a plausible prefix; then the slot
// still never reproduces either original message.
TEST(CheckIn, CollisionsAreFlaggedOrUnrecognisable) {
  Drbg rng = Drbg::FromSeed(1116);
  DpfParams p = Params(5, 20, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Bytes m1 = rng.RandomBytes(1 + rng.Uniform(18));
    Bytes m2 = rng.RandomBytes(trial % 2 == 0 ? m1.size() : 1 + rng.Uniform(18));
    if (m1 == m2) continue;
    auto a = ClientCheckInAt(m1, 9, p, rng);
    auto b = ClientCheckInAt(m2, 9, p, rng);
    ShareDatabase db = Combined(a->keys);
    ASSERT_TRUE(db.XorWith(Combined(b->keys)).ok());
    DecodedSlot d = DecodeSlot(db.slot(9));
    if (m1.size() == m2.size()) {
      EXPECT_EQ(d.kind, SlotKind::kGarbled);
    }
    EXPECT_NE(d.message, m1);
    EXPECT_NE(d.message, m2);
  }
}

class ServerTest : public ::testing::Test {
 protected:
  static Bytes Ok(CheckinServer& s, ByteSpan req) {
    auto r = CheckinServer::ParseResponse(s.Handle(req));
    EXPECT_TRUE(r.ok()) << r.status();
    return r.ok() ? *r : Bytes{};
  }
};

TEST_F(ServerTest, FullEpochOverTheWire) {
  Drbg rng = Drbg::FromSeed(1117);
  DpfParams p = Params(7, 30, 3);
  std::vector<CheckinServer> servers;
  for (uint32_t i = 0; i < 3; ++i) servers.emplace_back(i, p);
  std::map<uint64_t, Bytes> sent;
  for (uint64_t client = 0; client < 4; ++client) {
    Bytes msg = rng.RandomBytes(1 + rng.Uniform(28));
    auto c = ClientCheckInAt(msg, client * 31, p, rng);
    sent[c->index] = msg;
    for (uint32_t i = 0; i < 3; ++i) {
      Ok(servers[i], CheckinServer::SubmitRequest(42, client, c->keys[i]));
    }
  }
  // Duplicate submission is refused.
  auto dup = ClientCheckIn(Bytes{1}, p, rng);
  EXPECT_FALSE(
      CheckinServer::ParseResponse(servers[0].Handle(CheckinServer::SubmitRequest(42, 0, dup->keys[0])))
          .ok());
  // Output is not available before combination.
  EXPECT_FALSE(CheckinServer::ParseResponse(servers[0].Handle(CheckinServer::OutputRequest(42))).ok());

  for (CheckinServer& s : servers) Ok(s, CheckinServer::SealRequest(42));
  for (uint32_t i = 0; i < 3; ++i) {
    for (uint32_t j = 0; j < 3; ++j) {
      if (i != j) Ok(servers[j], *servers[i].ExchangeFor(42));
    }
  }
  Bytes out0 = Ok(servers[0], CheckinServer::OutputRequest(42));
  for (CheckinServer& s : servers) EXPECT_EQ(Ok(s, CheckinServer::OutputRequest(42)), out0);
  ShareDatabase db = *ShareDatabase::FromBytes(p.domain_size(), p.output_len, out0);
  for (uint64_t x = 0; x < p.domain_size(); ++x) {
    DecodedSlot d = DecodeSlot(db.slot(x));
    if (sent.contains(x)) {
      EXPECT_EQ(d.kind, SlotKind::kMessage);
      EXPECT_EQ(d.message, sent[x]);
    } else {
      EXPECT_EQ(d.kind, SlotKind::kEmpty);
    }
  }
}

TEST_F(ServerTest, PartialSubmissionFailsTheEpoch) {
  Drbg rng = Drbg::FromSeed(1118);
  DpfParams p = Params(6, 8, 2);
  CheckinServer s0(0, p), s1(1, p);
  auto full = ClientCheckIn(AsBytes("both"), p, rng);
  auto partial = ClientCheckIn(AsBytes("one"), p, rng);
  Ok(s0, CheckinServer::SubmitRequest(1, 10, full->keys[0]));
  Ok(s1, CheckinServer::SubmitRequest(1, 10, full->keys[1]));
  Ok(s0, CheckinServer::SubmitRequest(1, 11, partial->keys[0]));
  Ok(s0, CheckinServer::SealRequest(1));
  Ok(s1, CheckinServer::SealRequest(1));
  EXPECT_FALSE(CheckinServer::ParseResponse(s0.Handle(*s1.ExchangeFor(1))).ok());
  EXPECT_FALSE(CheckinServer::ParseResponse(s0.Handle(CheckinServer::OutputRequest(1))).ok());
  // A failed epoch stays failed.
  EXPECT_FALSE(CheckinServer::ParseResponse(s0.Handle(*s1.ExchangeFor(1))).ok());
}

TEST_F(ServerTest, KeyForAnotherServerIsRefused) {
  Drbg rng = Drbg::FromSeed(1119);
  DpfParams p = Params(6, 8, 2);
  CheckinServer s0(0, p);
  auto c = ClientCheckIn(AsBytes("x"), p, rng);
  EXPECT_FALSE(
      CheckinServer::ParseResponse(s0.Handle(CheckinServer::SubmitRequest(1, 1, c->keys[1]))).ok());
  EXPECT_FALSE(CheckinServer::ParseResponse(s0.Handle(Bytes{9, 0, 0, 0, 0, 0, 0, 0, 0})).ok());
}

}  // namespace
}  // namespace friendlink
