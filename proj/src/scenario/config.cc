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

#include "friendlink/scenario/config.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "friendlink/status_macros.h"
#include "json.hpp"

namespace friendlink::scenario {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DiscoverConfig, friend_counts, connected,
                                                bystanders, fpp, message_bytes,
                                                abe_bytes_per_friend)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ChatConfig, peers, messages, message_bytes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CheckinConfig, input_bits, slot_bytes, servers,
                                                clients, timing_keys, timing_repeats)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(LoadtestConfig, hops, capacity_mbps,
                                                interference_penalty, base_loss, onset_mbps,
                                                contention_slope, step_mbps, max_mbps,
                                                duration_s, loss_threshold, onset_tolerance,
                                                queue_frames, trace_duration_s)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AdversaryConfig, replay_trials,
                                                eavesdrop_messages, collusion_epochs,
                                                collusion_input_bits, collusion_slot_bytes,
                                                collusion_servers, collusion_clients)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ScenarioConfig, seed, discover, chat, checkin,
                                                loadtest, adversary)

namespace {

// Every key in `given` must exist in `known`, recursively through objects.
absl::Status CheckKeys(const json& given, const json& known, const std::string& where) {
  if (!given.is_object()) return absl::OkStatus();
  for (const auto& [key, value] : given.items()) {
    const std::string path = where.empty() ? key : absl::StrCat(where, ".", key);
    if (!known.contains(key)) return absl::InvalidArgumentError(absl::StrCat("unknown key ", path));
    if (value.is_object()) FL_RETURN_IF_ERROR(CheckKeys(value, known.at(key), path));
  }
  return absl::OkStatus();
}

absl::Status Require(bool ok, std::string_view what) {
  return ok ? absl::OkStatus() : absl::InvalidArgumentError(std::string(what));
}

}  // namespace

absl::StatusOr<ScenarioConfig> ParseConfig(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false, /*ignore_comments=*/true);
  if (j.is_discarded()) return absl::InvalidArgumentError("config is not valid JSON");
  if (!j.is_object()) return absl::InvalidArgumentError("config must be a JSON object");
  FL_RETURN_IF_ERROR(CheckKeys(j, json(ScenarioConfig{}), ""));
  ScenarioConfig config;
  try {
    config = j.get<ScenarioConfig>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  FL_RETURN_IF_ERROR(Validate(config));
  return config;
}

absl::StatusOr<ScenarioConfig> LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string ConfigJson(const ScenarioConfig& config) { return json(config).dump(); }

absl::Status Validate(const ScenarioConfig& c) {
  const DiscoverConfig& d = c.discover;
  FL_RETURN_IF_ERROR(Require(!d.friend_counts.empty(), "discover.friend_counts is empty"));
  for (uint32_t n : d.friend_counts) {
    FL_RETURN_IF_ERROR(Require(n >= d.connected && n > 0,
                               "discover.friend_counts must be at least discover.connected"));
  }
  FL_RETURN_IF_ERROR(Require(d.connected >= 1 && d.connected <= 64, "discover.connected in 1..64"));
  FL_RETURN_IF_ERROR(Require(d.bystanders <= 64, "discover.bystanders at most 64"));
  FL_RETURN_IF_ERROR(Require(d.fpp > 0 && d.fpp < 1, "discover.fpp in (0, 1)"));
  FL_RETURN_IF_ERROR(Require(d.message_bytes >= 1 && d.message_bytes <= 160,
                             "discover.message_bytes in 1..160"));
  FL_RETURN_IF_ERROR(Require(d.abe_bytes_per_friend > 0, "discover.abe_bytes_per_friend > 0"));

  const ChatConfig& ch = c.chat;
  FL_RETURN_IF_ERROR(Require(ch.peers >= 1 && ch.peers <= 32, "chat.peers in 1..32"));
  FL_RETURN_IF_ERROR(Require(ch.message_bytes >= 1 && ch.message_bytes <= 160,
                             "chat.message_bytes in 1..160"));

  const CheckinConfig& k = c.checkin;
  FL_RETURN_IF_ERROR(Require(k.input_bits >= 1 && k.input_bits <= 14, "checkin.input_bits in 1..14"));
  FL_RETURN_IF_ERROR(Require(k.servers == 2 || k.servers == 3, "checkin.servers in {2, 3}"));
  FL_RETURN_IF_ERROR(Require(k.clients >= 1, "checkin.clients >= 1"));
  FL_RETURN_IF_ERROR(Require(!k.slot_bytes.empty(), "checkin.slot_bytes is empty"));
  for (uint32_t m : k.slot_bytes) {
    FL_RETURN_IF_ERROR(Require(m >= 3 && m <= 65537, "checkin.slot_bytes in 3..65537"));
  }
  FL_RETURN_IF_ERROR(Require(k.timing_keys >= 1 && k.timing_repeats >= 1,
                             "checkin timing counts must be positive"));

  const LoadtestConfig& l = c.loadtest;
  FL_RETURN_IF_ERROR(Require(!l.hops.empty(), "loadtest.hops is empty"));
  for (uint32_t h : l.hops) FL_RETURN_IF_ERROR(Require(h >= 1 && h <= 3, "loadtest.hops in 1..3"));
  FL_RETURN_IF_ERROR(Require(l.capacity_mbps > 0, "loadtest.capacity_mbps > 0"));
  FL_RETURN_IF_ERROR(Require(l.interference_penalty > 0 && l.interference_penalty <= 1,
                             "loadtest.interference_penalty in (0, 1]"));
  FL_RETURN_IF_ERROR(Require(l.base_loss >= 0 && l.base_loss <= 1, "loadtest.base_loss in [0, 1]"));
  FL_RETURN_IF_ERROR(Require(l.step_mbps > 0 && l.max_mbps >= l.step_mbps,
                             "loadtest sweep needs 0 < step_mbps <= max_mbps"));
  FL_RETURN_IF_ERROR(Require(l.max_mbps / l.step_mbps <= 1000, "loadtest sweep too fine"));
  FL_RETURN_IF_ERROR(Require(l.duration_s > 0 && l.trace_duration_s > 0,
                             "loadtest durations must be positive"));
  FL_RETURN_IF_ERROR(Require(l.queue_frames >= 1, "loadtest.queue_frames >= 1"));

  const AdversaryConfig& a = c.adversary;
  FL_RETURN_IF_ERROR(Require(a.collusion_servers == 2 || a.collusion_servers == 3,
                             "adversary.collusion_servers in {2, 3}"));
  FL_RETURN_IF_ERROR(Require(a.collusion_input_bits >= 1 && a.collusion_input_bits <= 14,
                             "adversary.collusion_input_bits in 1..14"));
  FL_RETURN_IF_ERROR(Require(a.collusion_slot_bytes >= 3, "adversary.collusion_slot_bytes >= 3"));
  FL_RETURN_IF_ERROR(Require(a.collusion_clients >= 1, "adversary.collusion_clients >= 1"));
  return absl::OkStatus();
}

}  // namespace friendlink::scenario
