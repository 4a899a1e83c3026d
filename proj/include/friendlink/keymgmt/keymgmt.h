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

#ifndef FRIENDLINK_KEYMGMT_KEYMGMT_H_
#define FRIENDLINK_KEYMGMT_KEYMGMT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/crypto/asymmetric.h"
#include "friendlink/crypto/certificate.h"
#include "friendlink/identity/composite_id.h"

namespace friendlink {

using NodeId = uint32_t;

// Public keys keyed by node. Re-recording the same key is a no-op; a
// different key for a known node is refused with AlreadyExists (a possible
// impersonation attempt).
class KeyRepository {
 public:
  absl::Status Record(NodeId node, ByteSpan key_wire);
  absl::Status Record(NodeId node, const PublicKey& key);

  const PublicKey* Find(NodeId node) const;
  std::optional<NodeId> FindNodeByKey(const PublicKey& key) const;
  const std::map<NodeId, PublicKey>& entries() const { return keys_; }
  size_t size() const { return keys_.size(); }
  bool contains(NodeId node) const { return keys_.contains(node); }

 private:
  std::map<NodeId, PublicKey> keys_;
};

bool IsKeyConflict(const absl::Status& status);

// KR: keys received directly from neighbours.
using NeighborKeyRepository = KeyRepository;

// SKR: keys of every node, merged from the KRs announced during
// initialization.
class SharedKeyRepository : public KeyRepository {
 public:
  absl::Status Merge(const KeyRepository& other);
};

// Directed vouching graph: edge (a, b) means a reported receiving b's key.
class TrustGraph {
 public:
  void AddNode(NodeId n) { nodes_.insert(n); }
  void AddEdge(NodeId from, NodeId to);

  bool HasNode(NodeId n) const { return nodes_.contains(n); }
  const std::set<NodeId>& nodes() const { return nodes_; }
  const std::set<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  // Every node reaches every other node.
  bool StronglyConnected() const;

  friend bool operator==(const TrustGraph&, const TrustGraph&) = default;

 private:
  std::set<NodeId> nodes_;
  std::set<std::pair<NodeId, NodeId>> edges_;
};

TrustGraph BuildTrustGraph(NodeId local, const SharedKeyRepository& skr,
                           const std::map<NodeId, std::set<NodeId>>& received_from);

// Directed reachability; a node always reaches itself. False when either
// endpoint is absent.
bool TrustPathExists(const TrustGraph& graph, NodeId from, NodeId to);

// Immutable snapshot of the trust graph taken when initialization ends.
class MasterGraph {
 public:
  MasterGraph() = default;  // empty graph, admits nothing
  const TrustGraph& graph() const { return graph_; }
  Timestamp frozen_at() const { return frozen_at_; }

  friend bool operator==(const MasterGraph&, const MasterGraph&) = default;

 private:
  friend MasterGraph SnapshotMaster(const TrustGraph& graph, Timestamp now);
  MasterGraph(TrustGraph graph, Timestamp frozen_at)
      : graph_(std::move(graph)), frozen_at_(frozen_at) {}

  TrustGraph graph_;
  Timestamp frozen_at_ = 0;
};

MasterGraph SnapshotMaster(const TrustGraph& graph, Timestamp now);

enum class Admission { kAccepted, kExpired, kBadSignature, kUntrustedIssuer };
std::string_view AdmissionName(Admission a);

class CertRepository;

// Admits `cert` iff it verifies at `now` and the master graph holds a trust
// path from `local` to `issuer`. Accepted certificates replace any stored
// certificate for the same subject; rejected ones never enter `cr`.
Admission AdmitCertificate(CertRepository& cr, const Certificate& cert, const MasterGraph& graph,
                           NodeId issuer, NodeId local, Timestamp now);

// CR: certificates that were valid when admitted.
class CertRepository {
 public:
  const Certificate* Find(const CompositeId& subject) const;
  // Revocation as far as it is modelled here: drop the entry.
  bool Remove(const CompositeId& subject) { return certs_.erase(subject) > 0; }

  size_t size() const { return certs_.size(); }
  const std::map<CompositeId, Certificate>& entries() const { return certs_; }

  // [count u32][certificate wire]*; the persisted form of one node's CR.
  Bytes Serialize() const;
  // Bytes of certificate material held (count * 481).
  size_t StoredBytes() const { return certs_.size() * kCertificateWireBytes; }

  // Restores a persisted repository, re-verifying every entry at `now`.
  static absl::StatusOr<CertRepository> Deserialize(ByteSpan wire, Timestamp now);

 private:
  friend Admission AdmitCertificate(CertRepository&, const Certificate&, const MasterGraph&,
                                    NodeId, NodeId, Timestamp);
  std::map<CompositeId, Certificate> certs_;
};

// Per-node state produced by the initialization round.
struct NodeKeyState {
  NeighborKeyRepository kr;
  SharedKeyRepository skr;
  // What this node learned about who received whose key directly.
  std::map<NodeId, std::set<NodeId>> received_from;
  TrustGraph trust_graph;
};

// Simulates the initialization round over an undirected neighbour relation:
// each node hands its key to its neighbours (KR), then KR announcements are
// flooded until every node's view is stable (SKR, trust graph). Fails with
// AlreadyExists if two announcements disagree on a node's key.
absl::StatusOr<std::map<NodeId, NodeKeyState>> RunKeyDistribution(
    const std::map<NodeId, PublicKey>& keys, const std::map<NodeId, std::set<NodeId>>& neighbors);

}  // namespace friendlink

#endif  // FRIENDLINK_KEYMGMT_KEYMGMT_H_
