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

#include "gathering.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/status_macros.h"

namespace friendlink::scenario {
namespace {

const Bytes kAck{'a', 'c', 'k'};

}  // namespace

CompositeId IdentityOf(std::string_view name) {
  const std::vector<OsnId> ids{OsnId::FromString("facebook", name),
                               OsnId::FromString("twitter", absl::StrCat("@", std::string(name)))};
  return *CompositeOf(ids);
}

absl::StatusOr<std::unique_ptr<Gathering>> Gathering::Create(uint64_t seed,
                                                             const GatheringSpec& spec) {
  if (spec.connected < 1 || spec.friends < spec.connected) {
    return absl::InvalidArgumentError("need 1 <= connected <= friends");
  }
  std::unique_ptr<Gathering> g(new Gathering());
  g->spec_ = spec;
  g->rng_ = Drbg::FromSeed(seed);

  // Node 0 is the initiator, then the present friends, then strangers.
  g->names_.push_back("initiator");
  for (uint32_t i = 0; i < spec.connected; ++i) g->names_.push_back(absl::StrFormat("friend-%04d", i));
  for (uint32_t i = 0; i < spec.bystanders; ++i) g->names_.push_back(absl::StrFormat("stranger-%02d", i));
  const auto n = static_cast<NodeId>(g->names_.size());

  std::map<NodeId, PublicKey> pub;
  std::map<NodeId, std::set<NodeId>> adj;
  for (NodeId i = 0; i < n; ++i) {
    g->ids_.push_back(IdentityOf(g->names_[i]));
    g->node_of_[g->ids_[i]] = i;
    g->keys_.push_back(std::make_unique<KeyPair>(KeyPair::Generate(g->rng_)));
    FL_ASSIGN_OR_RETURN(Certificate cert, MakeCertificate(*g->keys_[i], g->ids_[i],
                                                          kCertNotBefore, kCertNotAfter));
    g->certs_.push_back(std::move(cert));
    pub.emplace(i, g->keys_[i]->public_key());
    for (NodeId j = 0; j < n; ++j) {
      if (j != i) adj[i].insert(j);
    }
  }
  FL_ASSIGN_OR_RETURN(auto states, RunKeyDistribution(pub, adj));

  auto is_friend = [&](NodeId i) { return i >= 1 && i <= spec.connected; };
  for (NodeId i = 0; i < n; ++i) {
    SessionInit init;
    init.role = i == 0 ? Role::kInitiator : Role::kTarget;
    init.node = i;
    init.self = g->ids_[i];
    if (i == 0) {
      for (NodeId f = 1; f <= spec.connected; ++f) {
        FL_RETURN_IF_ERROR(init.friends.Add(g->names_[f], g->ids_[f]));
      }
      for (uint32_t k = spec.connected; k < spec.friends; ++k) {
        const std::string name = absl::StrFormat("friend-%04d", k);
        FL_RETURN_IF_ERROR(init.friends.Add(name, IdentityOf(name)));
      }
    } else {
      // Present friends all know each other; strangers know only strangers.
      for (NodeId j = 0; j < n; ++j) {
        if (j == i) continue;
        const bool mutual = is_friend(i) ? (j == 0 || is_friend(j)) : (j != 0 && !is_friend(j));
        if (mutual) FL_RETURN_IF_ERROR(init.friends.Add(g->names_[j], g->ids_[j]));
      }
    }
    init.skr = states.at(i).skr;
    init.master = SnapshotMaster(states.at(i).trust_graph, kCertNotBefore);
    init.rng_seed = g->rng_.NextU64();
    g->inits_.push_back(std::move(init));
    g->sessions_.emplace_back(g->FreshSession(i));
  }

  netsim::NetworkConfig nc;
  nc.seed = g->rng_.NextU64();
  nc.record_trace = true;
  g->net_ = std::make_unique<netsim::Network>(nc);
  const netsim::LinkId room = g->net_->AddLink(nc.link.capacity_bps);
  for (NodeId i = 0; i < n; ++i) {
    g->net_->AddNode(/*relay=*/false);
    FL_RETURN_IF_ERROR(g->net_->Attach(i, netsim::Interface::kLegacy, room));
  }
  g->net_->SetReceiver([raw = g.get()](const netsim::Delivery& d) { raw->OnDelivery(d); });
  return g;
}

Session Gathering::FreshSession(NodeId node) const {
  return Session(inits_[node], *keys_[node], certs_[node]);
}

void Gathering::Fail(const absl::Status& s) {
  if (error_.ok() && !s.ok()) error_ = s;
}

void Gathering::Event(NodeId node, std::string_view what, std::string_view detail) {
  events_.push_back(absl::StrCat(net_->now(), ",", names_[node], ",", std::string(what), ",",
                                  std::string(detail)));
}

absl::Status Gathering::Send(NodeId from, NodeId to, const Frame& frame) {
  return net_->Send(from, to, EncodeFrame(frame), net_->now());
}

absl::Status Gathering::SendData(NodeId from, NodeId to, Bytes plaintext) {
  FL_ASSIGN_OR_RETURN(DataMessage msg, sessions_[from]->SendMessage(ids_[to], plaintext));
  const Bytes wire = EncodeFrame(msg);
  if (plaintext != kAck) {
    stats_.data_body_bytes = msg.PaddedBodyBytes();
    stats_.data_wire = wire.size();
  }
  in_flight_[{from, to}].push_back(Pending{std::move(plaintext), net_->now()});
  ++stats_.data_sent;
  Event(from, "data_sent", names_[to]);
  return net_->Send(from, to, wire, net_->now());
}

void Gathering::OnDelivery(const netsim::Delivery& d) {
  auto frame = DecodeFrame(*d.payload);
  if (!frame.ok()) return Fail(frame.status());
  const NodeId me = d.node;
  Session& s = *sessions_[me];

  switch (TypeOf(*frame)) {
    case FrameType::kSetup: {
      const auto& req = std::get<SetupRequest>(*frame);
      if (me == 0) return;
      SetupOutcome out = s.ProcessSetupRequest(req, kProtocolNow);
      if (out.initiator.has_value() && SymDecrypt(SymKeyOf(*out.initiator), req.cf).ok()) {
        ++stats_.cf_opened;
      }
      switch (out.verdict) {
        case SetupVerdict::kAccept:
          ++stats_.accepted;
          Event(me, "setup", "accept");
          stats_.reply_wire = EncodeFrame(*out.reply).size();
          return Fail(Send(me, 0, *out.reply));
        case SetupVerdict::kIgnore:
          ++stats_.ignored;
          return Event(me, "setup", "ignore");
        case SetupVerdict::kReject:
          ++stats_.rejected;
          return Event(me, "setup", absl::StrCat("reject:", std::string(RejectReasonName(*out.reason))));
      }
      return;
    }
    case FrameType::kReply:
      if (me != 0 || d.overheard) return;
      replies_.push_back(std::get<SetupReply>(*frame));
      return Event(me, "reply_from", names_[d.src]);
    case FrameType::kCertUpdate: {
      if (s.phase() != Phase::kConnected) return Event(me, "cert_update", "not_connected");
      auto verdicts = s.ApplyCertUpdate(std::get<CertUpdate>(*frame), kProtocolNow);
      if (!verdicts.ok()) return Fail(verdicts.status());
      size_t ok = 0;
      for (Admission a : *verdicts) ok += a == Admission::kAccepted;
      stats_.update_admissions += ok;
      return Event(me, "cert_update", absl::StrCat(ok, "/", verdicts->size(), " admitted"));
    }
    case FrameType::kData: {
      const auto& msg = std::get<DataMessage>(*frame);
      if (d.overheard) {
        // Everything a bystander could try: its own key, and the ID-derived
        // keys of both ends when it happens to know them.
        ++stats_.overheard_data;
        bool opened = false;
        if (s.phase() == Phase::kConnected && s.ReceiveMessage(msg).ok()) opened = true;
        for (NodeId end : {d.src, d.dst}) {
          if (s.friends().Contains(ids_[end]) && SymDecrypt(SymKeyOf(ids_[end]), msg.body).ok()) {
            opened = true;
          }
        }
        if (opened) ++stats_.overheard_opened;
        return Event(me, "overheard_data", opened ? "opened" : "sealed");
      }
      auto got = s.ReceiveMessage(msg);
      if (!got.ok()) return Fail(got.status());
      auto& queue = in_flight_[{d.src, me}];
      if (queue.empty()) return Fail(absl::InternalError("unexpected data message"));
      Pending sent = std::move(queue.front());
      queue.pop_front();
      stats_.latency_sum_us += d.time - sent.sent_at;
      if (sent.plaintext == kAck) {
        if (got->plaintext == sent.plaintext) ++stats_.acks;
        return Event(me, "ack_from", names_[d.src]);
      }
      ++stats_.data_delivered;
      if (got->plaintext == sent.plaintext) ++stats_.data_intact;
      Event(me, "data_from", names_[d.src]);
      return Fail(SendData(me, d.src, kAck));
    }
  }
}

absl::Status Gathering::Discover() {
  Session& init = *sessions_[0];
  std::vector<CompositeId> targets;
  for (const auto& e : init.friends()) targets.push_back(e.composite);
  FL_ASSIGN_OR_RETURN(BloomParams params, DeriveParams(spec_.friends, spec_.fpp));
  FL_ASSIGN_OR_RETURN(SetupRequest req, init.BuildSetupRequest(targets, params, kProtocolNow));
  stats_.setup_accounted = req.AccountedBytes();
  const Bytes wire = EncodeFrame(req);
  stats_.setup_wire = wire.size();
  request_ = req;
  Event(0, "setup_broadcast", absl::StrCat(targets.size(), " targets"));
  FL_RETURN_IF_ERROR(net_->Send(0, netsim::kBroadcast, wire, net_->now()));
  net_->Drain();
  FL_RETURN_IF_ERROR(error_);

  FL_ASSIGN_OR_RETURN(InitializationResult result,
                      init.CompleteInitialization(replies_, kProtocolNow));
  for (const std::string& why : result.dropped) Event(0, "reply_dropped", why);
  stats_.update_certs = result.update.certs.size();
  const Bytes update = EncodeFrame(result.update);
  stats_.update_wire = update.size();
  Event(0, "cert_update_broadcast", absl::StrCat(stats_.update_certs, " certs"));
  FL_RETURN_IF_ERROR(net_->Send(0, netsim::kBroadcast, update, net_->now()));
  net_->Drain();
  return error_;
}

absl::Status Gathering::SendToPeer(uint32_t peer_index, uint32_t message_bytes) {
  FL_RETURN_IF_ERROR(SendData(0, peer_node(peer_index), rng_.RandomBytes(message_bytes)));
  net_->Drain();
  return error_;
}

absl::Status Gathering::Chat(uint32_t messages, uint32_t message_bytes) {
  // The ring: initiator, then every connected peer in node order.
  std::vector<NodeId> ring{0};
  for (const auto& [id, cert] : sessions_[0]->peers()) ring.push_back(node_of_.at(id));
  if (ring.size() < 2) return absl::FailedPreconditionError("nobody joined the group");
  for (uint32_t k = 0; k < messages; ++k) {
    const NodeId from = ring[k % ring.size()];
    const NodeId to = ring[(k + 1) % ring.size()];
    FL_RETURN_IF_ERROR(SendData(from, to, rng_.RandomBytes(message_bytes)));
    net_->Drain();
    FL_RETURN_IF_ERROR(error_);
  }
  return absl::OkStatus();
}

std::vector<std::string> Gathering::Trace(const std::string& label) const {
  std::vector<std::string> out;
  out.push_back(absl::StrCat("# ", label, " network: time,event,node,frame,src,dst,bytes,outcome"));
  for (const auto& line : net_->trace()) out.push_back(line);
  out.push_back(absl::StrCat("# ", label, " protocol: time,node,event,detail"));
  for (const auto& line : events_) out.push_back(line);
  return out;
}

}  // namespace friendlink::scenario
