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

#include "friendlink/netsim/network.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace friendlink::netsim {

TimeUs TransmitTimeUs(size_t bytes, double capacity_bps) {
  return static_cast<TimeUs>(std::ceil(static_cast<double>(bytes) * 8.0 * 1e6 / capacity_bps));
}

Network::Network(NetworkConfig config)
    : config_(config), rng_(Drbg::FromSeed(config.seed)) {}

SimNodeId Network::AddNode(bool relay) {
  Node n;
  n.relay = relay;
  nodes_.push_back(std::move(n));
  return static_cast<SimNodeId>(nodes_.size() - 1);
}

LinkId Network::AddLink(double capacity_bps) {
  Link l;
  l.capacity_bps = capacity_bps;
  links_.push_back(std::move(l));
  stats_.links.emplace_back();
  return static_cast<LinkId>(links_.size() - 1);
}

absl::Status Network::Attach(SimNodeId node, Interface iface, LinkId link) {
  if (node >= nodes_.size() || link >= links_.size()) {
    return absl::InvalidArgumentError("unknown node or link");
  }
  auto& slot = nodes_[node].iface[static_cast<int>(iface)];
  if (slot.has_value()) return absl::AlreadyExistsError("interface already attached");
  for (const auto& other : nodes_[node].iface) {
    if (other == link) return absl::AlreadyExistsError("node already on this link");
  }
  slot = link;
  links_[link].members.push_back(node);
  links_[link].queues.push_back(Queue{node, {}});
  return absl::OkStatus();
}

std::vector<LinkId> Network::LinksOf(SimNodeId n) const {
  std::vector<LinkId> out;
  for (const auto& l : nodes_[n].iface) {
    if (l.has_value()) out.push_back(*l);
  }
  return out;
}

absl::Status Network::Send(SimNodeId src, SimNodeId dst, Bytes payload, TimeUs at) {
  if (src >= nodes_.size()) return absl::InvalidArgumentError("unknown source");
  if (LinksOf(src).empty()) return absl::FailedPreconditionError("source is not attached");
  if (dst != kBroadcast && (dst >= nodes_.size() || dst == src)) {
    return absl::InvalidArgumentError("bad destination");
  }
  if (payload.size() > config_.mtu) {
    return absl::InvalidArgumentError(
        absl::StrCat("payload of ", payload.size(), " bytes exceeds MTU ", config_.mtu));
  }
  if (at < now_) return absl::InvalidArgumentError("cannot send in the past");
  Frame f{.id = next_frame_++,
          .src = src,
          .dst = dst,
          .sender = src,
          .next_hop = kBroadcast,
          .payload = std::make_shared<const Bytes>(std::move(payload))};
  (dst == kBroadcast ? stats_.broadcast_sent : stats_.unicast_sent)++;
  Schedule(at, Event::kInject, 0, std::move(f));
  return absl::OkStatus();
}

void Network::Schedule(TimeUs t, Event::Kind kind, LinkId link, Frame frame) {
  events_.push(Event{t, next_seq_++, kind, link, std::move(frame)});
}

void Network::RunUntil(TimeUs until) {
  while (!events_.empty() && events_.top().time <= until) {
    Event e = events_.top();
    events_.pop();
    now_ = e.time;
    if (e.kind == Event::kTxDone) {
      FinishTx(e.link, std::move(e.frame));
      continue;
    }
    Frame& f = e.frame;
    Trace("send", f.src, f, "");
    if (f.dst == kBroadcast) {
      nodes_[f.src].seen.insert(f.id);
      for (LinkId l : LinksOf(f.src)) Enqueue(l, f);
      continue;
    }
    auto hop = Route(f.src, f.dst);
    if (!hop.has_value()) {
      Trace("drop", f.src, f, "unroutable");
      DropUnicast(f);
      continue;
    }
    f.next_hop = hop->first;
    Enqueue(hop->second, f);
  }
  if (until != std::numeric_limits<TimeUs>::max()) now_ = std::max(now_, until);
}

void Network::Enqueue(LinkId link, Frame frame) {
  Link& l = links_[link];
  LinkStats& ls = stats_.links[link];
  ++ls.offered;
  const uint64_t bits = frame.payload->size() * 8;
  l.window.emplace_back(now_, bits);
  l.window_bits += bits;

  auto q = std::find_if(l.queues.begin(), l.queues.end(),
                        [&](const Queue& q) { return q.node == frame.sender; });
  if (q->frames.size() >= config_.queue_frames) {
    ++ls.queue_dropped;
    Trace("drop", frame.sender, frame, "queue_full");
    if (frame.dst != kBroadcast) DropUnicast(frame);
    return;
  }
  frame.enqueued = now_;
  q->frames.push_back(std::move(frame));
  if (!l.busy) StartNext(link);
}

void Network::StartNext(LinkId link) {
  Link& l = links_[link];
  Queue* next = nullptr;
  for (Queue& q : l.queues) {
    if (q.frames.empty()) continue;
    if (next == nullptr || q.frames.front().enqueued < next->frames.front().enqueued) next = &q;
  }
  if (next == nullptr) {
    l.busy = false;
    return;
  }
  Frame f = std::move(next->frames.front());
  next->frames.pop_front();
  l.busy = true;
  const TimeUs done = now_ + TransmitTimeUs(f.payload->size(), l.capacity_bps);
  Schedule(done, Event::kTxDone, link, std::move(f));
}

bool Network::Lost(LinkId link, SimNodeId receiver) {
  Link& l = links_[link];
  while (!l.window.empty() && l.window.front().first <= now_ - config_.rate_window_us) {
    l.window_bits -= l.window.front().second;
    l.window.pop_front();
  }
  const LinkParams& p = config_.link;
  const double rate = static_cast<double>(l.window_bits) * 1e6 / config_.rate_window_us;
  double prob = p.base_loss;
  if (rate > p.contention_onset_bps) {
    prob += p.contention_slope * (rate - p.contention_onset_bps) / p.capacity_bps;
  }
  prob = std::clamp(prob, 0.0, 1.0);
  // Systematic sampling: a random phase per receiver, then one loss each
  // time the accumulated probability crosses an integer. The realized loss
  // fraction tracks the model to within one frame.
  auto [it, fresh] = l.loss_credit.try_emplace(receiver, 0.0);
  if (fresh) it->second = rng_.UnitDouble();
  it->second += prob;
  if (it->second >= 1.0) {
    it->second -= 1.0;
    return true;
  }
  return false;
}

void Network::FinishTx(LinkId link, Frame frame) {
  Link& l = links_[link];
  LinkStats& ls = stats_.links[link];
  ++ls.transmitted;
  ls.bits_transmitted += frame.payload->size() * 8;
  ++frame.hops;

  if (frame.next_hop == kBroadcast) {
    for (SimNodeId m : l.members) {
      if (m == frame.sender) continue;
      ++ls.receptions;
      if (Lost(link, m)) {
        ++ls.lost;
        Trace("drop", m, frame, "channel_loss");
        continue;
      }
      ++ls.received;
      Arrive(m, link, frame);
    }
  } else {
    ++ls.receptions;
    if (Lost(link, frame.next_hop)) {
      ++ls.lost;
      Trace("drop", frame.next_hop, frame, "channel_loss");
      DropUnicast(frame);
    } else {
      ++ls.received;
      for (SimNodeId m : l.members) {
        if (m == frame.sender || m == frame.next_hop || !receiver_) continue;
        receiver_(Delivery{now_, m, frame.src, frame.dst, frame.id, frame.hops, true,
                           frame.payload});
      }
      Arrive(frame.next_hop, link, frame);
    }
  }
  StartNext(link);
}

void Network::Arrive(SimNodeId node, LinkId via, const Frame& frame) {
  if (frame.next_hop == kBroadcast) {
    if (!nodes_[node].seen.insert(frame.id).second) return;
    ++stats_.broadcast_receptions;
    Trace("recv", node, frame, "delivered");
    if (receiver_) {
      receiver_(Delivery{now_, node, frame.src, frame.dst, frame.id, frame.hops, false,
                         frame.payload});
    }
    if (!nodes_[node].relay) return;
    for (LinkId l : LinksOf(node)) {
      if (l == via) continue;
      Frame fwd = frame;
      fwd.sender = node;
      Enqueue(l, std::move(fwd));
    }
    return;
  }
  if (node == frame.dst) {
    ++stats_.unicast_delivered;
    stats_.delivered_bits += frame.payload->size() * 8;
    Trace("recv", node, frame, "delivered");
    if (receiver_) {
      receiver_(Delivery{now_, node, frame.src, frame.dst, frame.id, frame.hops, false,
                         frame.payload});
    }
    return;
  }
  auto hop = Route(node, frame.dst);
  if (!hop.has_value()) {
    Trace("drop", node, frame, "unroutable");
    DropUnicast(frame);
    return;
  }
  Trace("relay", node, frame, "forwarded");
  Frame fwd = frame;
  fwd.sender = node;
  fwd.next_hop = hop->first;
  Enqueue(hop->second, std::move(fwd));
}

std::optional<std::pair<SimNodeId, LinkId>> Network::Route(SimNodeId from, SimNodeId to) const {
  // BFS; only relays may forward, and the first hop is remembered per node.
  std::vector<std::optional<std::pair<SimNodeId, LinkId>>> first(nodes_.size());
  std::vector<bool> visited(nodes_.size(), false);
  std::deque<SimNodeId> frontier{from};
  visited[from] = true;
  while (!frontier.empty()) {
    SimNodeId cur = frontier.front();
    frontier.pop_front();
    if (cur != from && !nodes_[cur].relay) continue;
    for (LinkId l : LinksOf(cur)) {
      for (SimNodeId m : links_[l].members) {
        if (visited[m]) continue;
        visited[m] = true;
        first[m] = cur == from ? std::make_pair(m, l) : first[cur];
        if (m == to) return first[m];
        frontier.push_back(m);
      }
    }
  }
  return std::nullopt;
}

void Network::DropUnicast(const Frame& f) {
  if (f.dst != kBroadcast) ++stats_.unicast_dropped;
}

void Network::Trace(const char* event, SimNodeId node, const Frame& f, const char* outcome) {
  if (!config_.record_trace) return;
  trace_.push_back(absl::StrCat(now_, ",", event, ",", node, ",", f.id, ",", f.src, ",",
                                f.dst == kBroadcast ? std::string("*") : absl::StrCat(f.dst), ",",
                                f.payload->size(), ",", outcome));
}

}  // namespace friendlink::netsim
