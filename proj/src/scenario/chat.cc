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

#include "absl/strings/str_cat.h"
#include "friendlink/scenario/scenarios.h"
#include "friendlink/status_macros.h"
#include "gathering.h"

namespace friendlink::scenario {

absl::StatusOr<ScenarioOutput> RunChat(const ScenarioConfig& config) {
  FL_RETURN_IF_ERROR(Validate(config));
  const ChatConfig& cc = config.chat;
  GatheringSpec spec{cc.peers, cc.peers, /*bystanders=*/1, config.discover.fpp};
  FL_ASSIGN_OR_RETURN(auto g,
                      Gathering::Create(Drbg::FromSeed(config.seed).Fork("chat").NextU64(), spec));
  FL_RETURN_IF_ERROR(g->Discover());
  FL_RETURN_IF_ERROR(g->Chat(cc.messages, cc.message_bytes));
  const GatheringStats& s = g->stats();
  const netsim::NetworkStats& ns = g->network().stats();

  ScenarioOutput out;
  Report& r = out.report;
  r.scenario = "chat";
  r.seed = config.seed;
  r.config_json = ConfigJson(config);

  const size_t round_trips = s.data_delivered + s.acks;
  Table& t = r.AddTable("chat", {"metric", "value"});
  t.Add({"group size", absl::StrCat(g->initiator().peers().size() + 1)});
  t.Add({"messages sent", absl::StrCat(cc.messages)});
  t.Add({"messages delivered", absl::StrCat(s.data_delivered)});
  t.Add({"delivered intact", absl::StrCat(s.data_intact)});
  t.Add({"acknowledgments", absl::StrCat(s.acks)});
  t.Add({"data body bytes", absl::StrCat(s.data_body_bytes)});
  t.Add({"frames overheard by others", absl::StrCat(s.overheard_data)});
  t.Add({"overheard frames opened", absl::StrCat(s.overheard_opened)});
  t.Add({"mean one-way latency (us)",
         round_trips == 0 ? "-" : Fixed(static_cast<double>(s.latency_sum_us) / round_trips, 1)});
  t.Add({"unicast frames on air", absl::StrCat(ns.unicast_sent)});
  t.Add({"simulated time (us)", absl::StrCat(g->network().now())});

  r.Expect("group formed", g->initiator().peers().size() == cc.peers,
           absl::StrCat(cc.peers, " peers"));
  r.Expect("every message delivered intact",
           s.data_delivered == cc.messages && s.data_intact == cc.messages,
           absl::StrCat(s.data_intact, "/", cc.messages));
  r.Expect("every message acknowledged", s.acks == cc.messages,
           absl::StrCat(s.acks, "/", cc.messages));
  r.Expect("listeners opened nothing", s.overheard_opened == 0 && s.overheard_data > 0,
           absl::StrCat(s.overheard_data, " overheard"));
  out.trace = g->Trace("chat");
  return out;
}

}  // namespace friendlink::scenario
