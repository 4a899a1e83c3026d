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

#ifndef FRIENDLINK_SCENARIO_GATHERING_H_
#define FRIENDLINK_SCENARIO_GATHERING_H_

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "friendlink/drbg.h"
#include "friendlink/identity/identity.h"
#include "friendlink/keymgmt/keymgmt.h"
#include "friendlink/netsim/network.h"
#include "friendlink/protocol/session.h"

namespace friendlink::scenario {

// Protocol clock used by every scenario; certificates are valid around it.
inline constexpr Timestamp kCertNotBefore = 1000;
inline constexpr Timestamp kCertNotAfter = 100000;
inline constexpr Timestamp kProtocolNow = 5000;

// Composite ID of a person known under `name` on two networks.
CompositeId IdentityOf(std::string_view name);

struct GatheringSpec {
  uint32_t friends = 10;     // size of the initiator's friend list
  uint32_t connected = 10;   // of which present in the room
  uint32_t bystanders = 0;   // present strangers
  double fpp = 0.02;
};

struct GatheringStats {
  size_t setup_accounted = 0;
  size_t setup_wire = 0;
  size_t reply_wire = 0;
  size_t update_wire = 0;
  size_t update_certs = 0;
  size_t accepted = 0;
  size_t ignored = 0;
  size_t rejected = 0;
  size_t cf_opened = 0;          // nodes that identified the initiator and read its CF
  size_t update_admissions = 0;  // certificates admitted from the group update
  size_t data_sent = 0;
  size_t data_delivered = 0;
  size_t data_intact = 0;
  size_t acks = 0;
  size_t data_body_bytes = 0;
  size_t data_wire = 0;
  size_t overheard_data = 0;
  size_t overheard_opened = 0;   // must stay zero
  int64_t latency_sum_us = 0;
};

// One initiator, its present friends and some strangers sharing a single
// wireless broadcast domain. Drives the full handshake and message
// exchange through the network model.
class Gathering {
 public:
  static absl::StatusOr<std::unique_ptr<Gathering>> Create(uint64_t seed, const GatheringSpec& spec);

  // Stages 1 to 3: setup broadcast, replies, group certificate update.
  absl::Status Discover();

  // Stages 4 and 5 round a ring of initiator and peers; every message is
  // acknowledged.
  absl::Status Chat(uint32_t messages, uint32_t message_bytes);

  // A single message from the initiator to `peer_index` (0-based among the
  // connected friends).
  absl::Status SendToPeer(uint32_t peer_index, uint32_t message_bytes);

  // A new session for `node`, as it stood right after key distribution.
  Session FreshSession(NodeId node) const;

  const GatheringStats& stats() const { return stats_; }
  const Session& initiator() const { return *sessions_[0]; }
  const SetupRequest* last_request() const { return request_ ? &*request_ : nullptr; }
  const netsim::Network& network() const { return *net_; }
  const std::vector<std::string>& events() const { return events_; }
  // Trace: network lines then protocol events.
  std::vector<std::string> Trace(const std::string& label) const;

  NodeId initiator_node() const { return 0; }
  NodeId peer_node(uint32_t i) const { return 1 + i; }
  size_t size() const { return names_.size(); }

 private:
  Gathering() = default;

  struct Pending {
    Bytes plaintext;
    netsim::TimeUs sent_at = 0;
  };

  void OnDelivery(const netsim::Delivery& d);
  void Fail(const absl::Status& s);
  absl::Status Send(NodeId from, NodeId to, const Frame& frame);
  absl::Status SendData(NodeId from, NodeId to, Bytes plaintext);
  void Event(NodeId node, std::string_view what, std::string_view detail);

  GatheringSpec spec_;
  Drbg rng_ = Drbg::FromSeed(0);
  std::vector<std::string> names_;
  std::vector<CompositeId> ids_;
  std::vector<std::unique_ptr<KeyPair>> keys_;
  std::vector<Certificate> certs_;
  std::vector<SessionInit> inits_;
  std::vector<std::optional<Session>> sessions_;
  std::map<CompositeId, NodeId> node_of_;
  std::unique_ptr<netsim::Network> net_;
  std::optional<SetupRequest> request_;
  std::vector<SetupReply> replies_;
  std::map<std::pair<NodeId, NodeId>, std::deque<Pending>> in_flight_;
  GatheringStats stats_;
  std::vector<std::string> events_;
  absl::Status error_;
};

}  // namespace friendlink::scenario

#endif  // FRIENDLINK_SCENARIO_GATHERING_H_
