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

#include "friendlink/keymgmt/keymgmt.h"

#include <gtest/gtest.h>

#include <vector>

#include "friendlink/drbg.h"

namespace friendlink {
namespace {

class KeymgmtTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Drbg rng = Drbg::FromSeed(501);
    pairs_ = new std::vector<KeyPair>;
    for (int i = 0; i < 8; ++i) pairs_->push_back(KeyPair::Generate(rng));
  }
  static void TearDownTestSuite() { delete pairs_; }

  static const KeyPair& Pair(int i) { return (*pairs_)[i]; }
  static PublicKey Key(int i) { return Pair(i).public_key(); }

  static std::vector<KeyPair>* pairs_;
};

std::vector<KeyPair>* KeymgmtTest::pairs_ = nullptr;

CompositeId Subject(uint8_t fill) {
  CompositeId id;
  id.digest.fill(fill);
  return id;
}

TEST_F(KeymgmtTest, RecordThenLookup) {
  KeyRepository kr;
  ASSERT_TRUE(kr.Record(1, Key(0).wire()).ok());
  ASSERT_NE(kr.Find(1), nullptr);
  EXPECT_EQ(*kr.Find(1), Key(0));
  EXPECT_EQ(kr.FindNodeByKey(Key(0)), 1u);
  EXPECT_FALSE(kr.FindNodeByKey(Key(1)).has_value());
}

TEST_F(KeymgmtTest, RecordingTheSameKeyTwiceIsIdempotent) {
  KeyRepository kr;
  ASSERT_TRUE(kr.Record(1, Key(0)).ok());
  ASSERT_TRUE(kr.Record(1, Key(0)).ok());
  EXPECT_EQ(kr.size(), 1u);
}

TEST_F(KeymgmtTest, ConflictingKeyIsRefused) {
  KeyRepository kr;
  ASSERT_TRUE(kr.Record(1, Key(0)).ok());
  absl::Status s = kr.Record(1, Key(1));
  EXPECT_TRUE(IsKeyConflict(s));
  EXPECT_EQ(*kr.Find(1), Key(0));
}

TEST_F(KeymgmtTest, UnparseableKeyIsRejected) {
  KeyRepository kr;
  EXPECT_FALSE(kr.Record(1, Bytes(12, 7)).ok());
  EXPECT_EQ(kr.size(), 0u);
}

TEST_F(KeymgmtTest, MergeIsSupersetAndDetectsConflicts) {
  KeyRepository kr;
  ASSERT_TRUE(kr.Record(2, Key(2)).ok());
  ASSERT_TRUE(kr.Record(3, Key(3)).ok());
  SharedKeyRepository skr;
  ASSERT_TRUE(skr.Record(1, Key(1)).ok());
  ASSERT_TRUE(skr.Merge(kr).ok());
  EXPECT_EQ(skr.size(), 3u);
  for (const auto& [node, key] : kr.entries()) EXPECT_EQ(*skr.Find(node), key);

  KeyRepository liar;
  ASSERT_TRUE(liar.Record(2, Key(5)).ok());
  EXPECT_TRUE(IsKeyConflict(skr.Merge(liar)));
}

TEST(TrustGraph, EmptySkrGivesOnlyLocalNode) {
  TrustGraph g = BuildTrustGraph(7, SharedKeyRepository{}, {});
  EXPECT_EQ(g.nodes(), std::set<NodeId>{7});
  EXPECT_TRUE(g.edges().empty());
}

TEST(TrustGraph, EdgeCountIsSumOfReceivedSets) {
  std::map<NodeId, std::set<NodeId>> received = {{1, {2, 3}}, {2, {1}}, {3, {1, 2, 4}}};
  TrustGraph g = BuildTrustGraph(1, SharedKeyRepository{}, received);
  EXPECT_EQ(g.edges().size(), 6u);
  for (const auto& [from, to] : g.edges()) {
    EXPECT_TRUE(g.HasNode(from));
    EXPECT_TRUE(g.HasNode(to));
    EXPECT_TRUE(received.at(from).contains(to));
  }
}

TEST(TrustGraph, ChainThroughRelayHasEndToEndPath) {
  // A(1) - B(2) - C(3): B received keys from both ends and vouches for them.
  TrustGraph g = BuildTrustGraph(1, SharedKeyRepository{}, {{1, {2}}, {2, {1, 3}}, {3, {2}}});
  EXPECT_TRUE(TrustPathExists(g, 1, 3));
  EXPECT_TRUE(TrustPathExists(g, 3, 1));
  EXPECT_TRUE(g.StronglyConnected());
}

TEST(TrustGraph, ReachabilityEdgeCases) {
  TrustGraph g;
  g.AddEdge(1, 2);
  g.AddNode(9);
  EXPECT_TRUE(TrustPathExists(g, 9, 9));
  EXPECT_TRUE(TrustPathExists(g, 1, 2));
  EXPECT_FALSE(TrustPathExists(g, 2, 1));
  EXPECT_FALSE(TrustPathExists(g, 1, 9));
  EXPECT_FALSE(TrustPathExists(g, 1, 42));
  EXPECT_FALSE(TrustPathExists(g, 42, 42));
  EXPECT_FALSE(g.StronglyConnected());
}

// Reachability agrees with a transitive-closure oracle on random graphs.
TEST(TrustGraph, MatchesClosureOracle) {
  Drbg rng = Drbg::FromSeed(502);
  for (int trial = 0; trial < 50; ++trial) {
    constexpr int kNodes = 9;
    bool reach[kNodes][kNodes] = {};
    TrustGraph g;
    for (int i = 0; i < kNodes; ++i) {
      g.AddNode(i);
      reach[i][i] = true;
    }
    for (int e = 0; e < 12; ++e) {
      int a = rng.Uniform(kNodes), b = rng.Uniform(kNodes);
      g.AddEdge(a, b);
      reach[a][b] = true;
    }
    for (int k = 0; k < kNodes; ++k)
      for (int i = 0; i < kNodes; ++i)
        for (int j = 0; j < kNodes; ++j) reach[i][j] |= reach[i][k] && reach[k][j];
    for (int i = 0; i < kNodes; ++i)
      for (int j = 0; j < kNodes; ++j) ASSERT_EQ(TrustPathExists(g, i, j), reach[i][j]);
  }
}

TEST(MasterGraph, SnapshotIsAnIndependentCopy) {
  TrustGraph g;
  g.AddEdge(1, 2);
  MasterGraph master = SnapshotMaster(g, 1234);
  g.AddEdge(2, 3);
  EXPECT_EQ(master.graph().edges().size(), 1u);
  EXPECT_FALSE(master.graph().HasNode(3));
  EXPECT_EQ(master.frozen_at(), 1234u);
  EXPECT_EQ(SnapshotMaster(master.graph(), master.frozen_at()), master);
}

class AdmissionTest : public KeymgmtTest {
 protected:
  // Trusted 1 <-> 2; node 5 never took part in initialization.
  MasterGraph Master() const {
    TrustGraph g;
    g.AddEdge(1, 2);
    g.AddEdge(2, 1);
    return SnapshotMaster(g, 0);
  }
};

TEST_F(AdmissionTest, ValidCertFromTrustedIssuerIsAccepted) {
  CertRepository cr;
  auto cert = MakeCertificate(Pair(2), Subject(2), 100, 200);
  ASSERT_TRUE(cert.ok());
  EXPECT_EQ(AdmitCertificate(cr, *cert, Master(), 2, 1, 150), Admission::kAccepted);
  ASSERT_NE(cr.Find(Subject(2)), nullptr);
  EXPECT_EQ(cr.StoredBytes(), 481u);
}

TEST_F(AdmissionTest, OutsiderIsUntrustedAndNeverStored) {
  CertRepository cr;
  auto cert = MakeCertificate(Pair(5), Subject(5), 100, 200);
  EXPECT_EQ(AdmitCertificate(cr, *cert, Master(), 5, 1, 150), Admission::kUntrustedIssuer);
  EXPECT_EQ(cr.size(), 0u);
}

TEST_F(AdmissionTest, ExpiredAndForgedAreRejected) {
  CertRepository cr;
  auto cert = MakeCertificate(Pair(2), Subject(2), 100, 200);
  EXPECT_EQ(AdmitCertificate(cr, *cert, Master(), 2, 1, 201), Admission::kExpired);
  Certificate forged = *cert;
  forged.subject = Subject(9);
  EXPECT_EQ(AdmitCertificate(cr, forged, Master(), 2, 1, 150), Admission::kBadSignature);
  EXPECT_EQ(cr.size(), 0u);
}

TEST_F(AdmissionTest, DeterministicAndRenewalReplaces) {
  auto old_cert = MakeCertificate(Pair(2), Subject(2), 100, 200);
  auto renewed = MakeCertificate(Pair(2), Subject(2), 150, 400);
  CertRepository a, b;
  for (CertRepository* cr : {&a, &b}) {
    EXPECT_EQ(AdmitCertificate(*cr, *old_cert, Master(), 2, 1, 160), Admission::kAccepted);
    EXPECT_EQ(AdmitCertificate(*cr, *renewed, Master(), 2, 1, 160), Admission::kAccepted);
  }
  EXPECT_EQ(a.Serialize(), b.Serialize());
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(a.Find(Subject(2))->not_after, 400u);
  EXPECT_TRUE(a.Remove(Subject(2)));
  EXPECT_EQ(a.size(), 0u);
}

TEST_F(AdmissionTest, PersistenceRoundTripsAndRevalidates) {
  CertRepository cr;
  for (int i = 1; i <= 2; ++i) {
    auto cert = MakeCertificate(Pair(i), Subject(i), 100, 200);
    ASSERT_EQ(AdmitCertificate(cr, *cert, Master(), i, 1, 150), Admission::kAccepted);
  }
  Bytes wire = cr.Serialize();
  EXPECT_EQ(wire.size(), 4 + 2 * 481u);
  auto back = CertRepository::Deserialize(wire, 150);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->Serialize(), wire);
  EXPECT_FALSE(CertRepository::Deserialize(wire, 300).ok());
  wire.push_back(0);
  EXPECT_FALSE(CertRepository::Deserialize(wire, 150).ok());
}

TEST_F(KeymgmtTest, InitializationRoundOverAChainIsComplete) {
  constexpr int kNodes = 6;
  std::map<NodeId, PublicKey> keys;
  std::map<NodeId, std::set<NodeId>> adj;
  for (int i = 0; i < kNodes; ++i) keys.emplace(i, Key(i));
  for (int i = 0; i + 1 < kNodes; ++i) {
    adj[i].insert(i + 1);
    adj[i + 1].insert(i);
  }
  auto state = RunKeyDistribution(keys, adj);
  ASSERT_TRUE(state.ok()) << state.status();
  for (const auto& [node, s] : *state) {
    EXPECT_EQ(s.skr.size(), static_cast<size_t>(kNodes)) << node;
    EXPECT_EQ(s.kr.size(), adj[node].size());
    EXPECT_TRUE(s.trust_graph.StronglyConnected()) << node;
    for (const auto& [peer, key] : s.skr.entries()) EXPECT_EQ(key, keys.at(peer));
  }
}

TEST_F(KeymgmtTest, DisconnectedIslandsDoNotLearnEachOther) {
  std::map<NodeId, PublicKey> keys = {{0, Key(0)}, {1, Key(1)}, {2, Key(2)}, {3, Key(3)}};
  std::map<NodeId, std::set<NodeId>> adj = {{0, {1}}, {1, {0}}, {2, {3}}, {3, {2}}};
  auto state = RunKeyDistribution(keys, adj);
  ASSERT_TRUE(state.ok());
  EXPECT_EQ(state->at(0).skr.size(), 2u);
  EXPECT_FALSE(TrustPathExists(state->at(0).trust_graph, 0, 2));
}

}  // namespace
}  // namespace friendlink
