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

#ifndef FRIENDLINK_NETSIM_NETWORK_H_
#define FRIENDLINK_NETSIM_NETWORK_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/bytes.h"
#include "friendlink/drbg.h"

namespace friendlink::netsim {

using TimeUs = int64_t;
using SimNodeId = uint32_t;
using LinkId = uint32_t;

inline constexpr SimNodeId kBroadcast = std::numeric_limits<SimNodeId>::max();
inline constexpr size_t kDefaultMtu = 65507;
inline constexpr size_t kDefaultQueueFrames = 64;

enum class Interface : uint8_t { kLegacy = 0, kP2p = 1 };

// Channel behaviour shared by every link of a topology.
struct LinkParams {
  double capacity_bps = 20e6;
  double base_loss = 0.0;
  // Contention: above `contention_onset_bps` of offered traffic (measured
  // over a sliding window) each reception is additionally lost with
  // probability slope * (rate - onset) / capacity_bps.
  double contention_onset_bps = std::numeric_limits<double>::infinity();
  double contention_slope = 0.0;
};

struct NetworkConfig {
  LinkParams link;
  double interference_penalty = 1.0;  // per extra co-channel hop
  size_t queue_frames = kDefaultQueueFrames;
  size_t mtu = kDefaultMtu;
  TimeUs rate_window_us = 100'000;
  uint64_t seed = 1;
  bool record_trace = false;
};

struct Delivery {
  TimeUs time = 0;
  SimNodeId node = 0;
  SimNodeId src = 0;
  SimNodeId dst = 0;
  uint64_t frame_id = 0;
  uint32_t hops = 0;
  bool overheard = false;  // unicast frame picked up by a non-addressee
  std::shared_ptr<const Bytes> payload;
};

struct LinkStats {
  uint64_t offered = 0;        // frames presented to the link's queues
  uint64_t queue_dropped = 0;  // refused by a full queue
  uint64_t transmitted = 0;
  uint64_t receptions = 0;     // (frame, receiver) pairs attempted
  uint64_t received = 0;
  uint64_t lost = 0;           // channel loss
  uint64_t bits_transmitted = 0;
};

struct NetworkStats {
  uint64_t unicast_sent = 0;
  uint64_t unicast_delivered = 0;
  uint64_t unicast_dropped = 0;  // queue, channel or routing
  uint64_t broadcast_sent = 0;
  uint64_t broadcast_receptions = 0;
  uint64_t delivered_bits = 0;   // unicast payload bits at their destinations
  std::vector<LinkStats> links;
};

// Deterministic discrete-event model of nodes with two radio interfaces
// joined by shared, capacity-limited links. Single-threaded; a run is a
// pure function of topology, workload and seed.
class Network {
 public:
  explicit Network(NetworkConfig config);

  SimNodeId AddNode(bool relay);
  LinkId AddLink(double capacity_bps);
  absl::Status Attach(SimNodeId node, Interface iface, LinkId link);

  // Injects a frame at `at`. Broadcast frames reach every node of the
  // source's links and are flooded onward by relays; unicast frames follow
  // the shortest relay path.
  absl::Status Send(SimNodeId src, SimNodeId dst, Bytes payload, TimeUs at);

  // Called for every reception, in simulated-time order.
  void SetReceiver(std::function<void(const Delivery&)> receiver) { receiver_ = std::move(receiver); }

  // Processes events up to and including `until`.
  void RunUntil(TimeUs until);
  // Runs until no events remain.
  void Drain() { RunUntil(std::numeric_limits<TimeUs>::max()); }

  TimeUs now() const { return now_; }
  const NetworkStats& stats() const { return stats_; }
  const std::vector<std::string>& trace() const { return trace_; }
  size_t node_count() const { return nodes_.size(); }
  size_t link_count() const { return links_.size(); }
  double link_capacity(LinkId l) const { return links_[l].capacity_bps; }
  bool is_relay(SimNodeId n) const { return nodes_[n].relay; }
  const NetworkConfig& config() const { return config_; }

 private:
  struct Frame {
    uint64_t id = 0;
    SimNodeId src = 0;
    SimNodeId dst = 0;
    SimNodeId sender = 0;     // transmitter on the current hop
    SimNodeId next_hop = 0;   // kBroadcast for broadcast frames
    uint32_t hops = 0;
    TimeUs enqueued = 0;
    std::shared_ptr<const Bytes> payload;
  };
  struct Node {
    bool relay = false;
    std::optional<LinkId> iface[2];
    std::set<uint64_t> seen;  // broadcast dedup
  };
  struct Queue {
    SimNodeId node;
    std::deque<Frame> frames;
  };
  struct Link {
    double capacity_bps = 0;
    std::vector<SimNodeId> members;
    std::vector<Queue> queues;  // one per member, same order
    bool busy = false;
    std::deque<std::pair<TimeUs, uint64_t>> window;  // offered bits
    uint64_t window_bits = 0;
    std::map<SimNodeId, double> loss_credit;
  };
  struct Event {
    TimeUs time;
    uint64_t seq;
    enum Kind { kInject, kTxDone } kind;
    LinkId link = 0;
    Frame frame;
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  void Schedule(TimeUs t, Event::Kind kind, LinkId link, Frame frame);
  void Enqueue(LinkId link, Frame frame);
  void StartNext(LinkId link);
  void FinishTx(LinkId link, Frame frame);
  void Arrive(SimNodeId node, LinkId via, const Frame& frame);
  bool Lost(LinkId link, SimNodeId receiver);
  // First hop (next node and link) of a shortest relay path, if any.
  std::optional<std::pair<SimNodeId, LinkId>> Route(SimNodeId from, SimNodeId to) const;
  std::vector<LinkId> LinksOf(SimNodeId n) const;
  void Trace(const char* event, SimNodeId node, const Frame& f, const char* outcome);
  void DropUnicast(const Frame& f);

  NetworkConfig config_;
  Drbg rng_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  uint64_t next_seq_ = 0;
  uint64_t next_frame_ = 0;
  TimeUs now_ = 0;
  NetworkStats stats_;
  std::vector<std::string> trace_;
  std::function<void(const Delivery&)> receiver_;
};

// Serialization time of `bytes` on a link of `capacity_bps`, rounded up to
// whole microseconds.
TimeUs TransmitTimeUs(size_t bytes, double capacity_bps);

}  // namespace friendlink::netsim

#endif  // FRIENDLINK_NETSIM_NETWORK_H_
