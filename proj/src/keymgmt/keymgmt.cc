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

#include <deque>

#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"

namespace friendlink {

namespace {
constexpr char kKeyConflict[] = "key conflict";
}  // namespace

absl::Status KeyRepository::Record(NodeId node, ByteSpan key_wire) {
  FL_ASSIGN_OR_RETURN(PublicKey key, PublicKey::Parse(key_wire));
  return Record(node, key);
}

absl::Status KeyRepository::Record(NodeId node, const PublicKey& key) {
  auto [it, inserted] = keys_.emplace(node, key);
  if (!inserted && !(it->second == key)) {
    return absl::AlreadyExistsError(absl::StrCat(kKeyConflict, " for node ", node));
  }
  return absl::OkStatus();
}

const PublicKey* KeyRepository::Find(NodeId node) const {
  auto it = keys_.find(node);
  return it == keys_.end() ? nullptr : &it->second;
}

std::optional<NodeId> KeyRepository::FindNodeByKey(const PublicKey& key) const {
  for (const auto& [node, k] : keys_) {
    if (k == key) return node;
  }
  return std::nullopt;
}

bool IsKeyConflict(const absl::Status& status) {
  return status.code() == absl::StatusCode::kAlreadyExists;
}

absl::Status SharedKeyRepository::Merge(const KeyRepository& other) {
  for (const auto& [node, key] : other.entries()) FL_RETURN_IF_ERROR(Record(node, key));
  return absl::OkStatus();
}

void TrustGraph::AddEdge(NodeId from, NodeId to) {
  nodes_.insert(from);
  nodes_.insert(to);
  edges_.emplace(from, to);
}

bool TrustGraph::StronglyConnected() const {
  for (NodeId a : nodes_) {
    for (NodeId b : nodes_) {
      if (!TrustPathExists(*this, a, b)) return false;
    }
  }
  return true;
}

TrustGraph BuildTrustGraph(NodeId local, const SharedKeyRepository& skr,
                           const std::map<NodeId, std::set<NodeId>>& received_from) {
  TrustGraph g;
  g.AddNode(local);
  for (const auto& [node, key] : skr.entries()) g.AddNode(node);
  for (const auto& [from, tos] : received_from) {
    g.AddNode(from);
    for (NodeId to : tos) g.AddEdge(from, to);
  }
  return g;
}

bool TrustPathExists(const TrustGraph& graph, NodeId from, NodeId to) {
  if (!graph.HasNode(from) || !graph.HasNode(to)) return false;
  std::set<NodeId> seen{from};
  std::deque<NodeId> frontier{from};
  while (!frontier.empty()) {
    NodeId cur = frontier.front();
    frontier.pop_front();
    if (cur == to) return true;
    for (auto it = graph.edges().lower_bound({cur, 0});
         it != graph.edges().end() && it->first == cur; ++it) {
      if (seen.insert(it->second).second) frontier.push_back(it->second);
    }
  }
  return false;
}

MasterGraph SnapshotMaster(const TrustGraph& graph, Timestamp now) { return {graph, now}; }

std::string_view AdmissionName(Admission a) {
  switch (a) {
    case Admission::kAccepted:
      return "accepted";
    case Admission::kExpired:
      return "expired";
    case Admission::kBadSignature:
      return "bad_signature";
    case Admission::kUntrustedIssuer:
      return "untrusted_issuer";
  }
  return "unknown";
}

Admission AdmitCertificate(CertRepository& cr, const Certificate& cert, const MasterGraph& graph,
                           NodeId issuer, NodeId local, Timestamp now) {
  switch (VerifyCertificate(cert, now)) {
    case CertStatus::kBadSignature:
      return Admission::kBadSignature;
    case CertStatus::kExpired:
      return Admission::kExpired;
    case CertStatus::kValid:
      break;
  }
  if (!TrustPathExists(graph.graph(), local, issuer)) return Admission::kUntrustedIssuer;
  cr.certs_.insert_or_assign(cert.subject, cert);
  return Admission::kAccepted;
}

const Certificate* CertRepository::Find(const CompositeId& subject) const {
  auto it = certs_.find(subject);
  return it == certs_.end() ? nullptr : &it->second;
}

Bytes CertRepository::Serialize() const {
  ByteWriter w;
  w.PutU32(static_cast<uint32_t>(certs_.size()));
  for (const auto& [subject, cert] : certs_) w.PutBytes(cert.Serialize());
  return std::move(w).Take();
}

absl::StatusOr<CertRepository> CertRepository::Deserialize(ByteSpan wire, Timestamp now) {
  ByteReader r(wire);
  FL_ASSIGN_OR_RETURN(uint32_t count, r.U32());
  CertRepository out;
  for (uint32_t i = 0; i < count; ++i) {
    FL_ASSIGN_OR_RETURN(ByteSpan raw, r.Take(kCertificateWireBytes));
    FL_ASSIGN_OR_RETURN(Certificate cert, Certificate::Parse(raw));
    if (CertStatus s = VerifyCertificate(cert, now); s != CertStatus::kValid) {
      return absl::FailedPreconditionError(
          absl::StrCat("stored certificate ", cert.subject.hex(), " is ", std::string(CertStatusName(s))));
    }
    out.certs_.insert_or_assign(cert.subject, std::move(cert));
  }
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after certificates");
  return out;
}

absl::StatusOr<std::map<NodeId, NodeKeyState>> RunKeyDistribution(
    const std::map<NodeId, PublicKey>& keys,
    const std::map<NodeId, std::set<NodeId>>& neighbors) {
  std::map<NodeId, NodeKeyState> state;
  for (const auto& [node, key] : keys) {
    NodeKeyState& s = state[node];
    FL_RETURN_IF_ERROR(s.skr.Record(node, key));
  }

  // Direct exchange with neighbours.
  for (const auto& [node, adj] : neighbors) {
    if (!state.contains(node)) continue;
    for (NodeId peer : adj) {
      auto it = keys.find(peer);
      if (it == keys.end()) continue;
      FL_RETURN_IF_ERROR(state[node].kr.Record(peer, it->second));
    }
  }

  // Flood KR announcements; each node learns (announcer -> KR) pairs.
  std::map<NodeId, std::map<NodeId, const KeyRepository*>> known;
  for (auto& [node, s] : state) known[node][node] = &s.kr;
  for (bool changed = true; changed;) {
    changed = false;
    auto next = known;
    for (const auto& [node, adj] : neighbors) {
      if (!next.contains(node)) continue;
      for (NodeId peer : adj) {
        if (!known.contains(peer)) continue;
        for (const auto& [announcer, kr] : known[peer]) {
          changed |= next[node].emplace(announcer, kr).second;
        }
      }
    }
    known = std::move(next);
  }

  for (auto& [node, s] : state) {
    for (const auto& [announcer, kr] : known[node]) {
      FL_RETURN_IF_ERROR(s.skr.Merge(*kr));
      FL_RETURN_IF_ERROR(s.skr.Record(announcer, keys.at(announcer)));
      auto& received = s.received_from[announcer];
      for (const auto& [peer, key] : kr->entries()) received.insert(peer);
    }
    s.trust_graph = BuildTrustGraph(node, s.skr, s.received_from);
  }
  return state;
}

}  // namespace friendlink
