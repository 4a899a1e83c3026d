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

#ifndef FRIENDLINK_SCENARIO_CONFIG_H_
#define FRIENDLINK_SCENARIO_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace friendlink::scenario {

struct DiscoverConfig {
  std::vector<uint32_t> friend_counts{100, 1000};
  uint32_t connected = 10;   // friends present and reachable
  uint32_t bystanders = 5;   // present, in the key round, not friends
  double fpp = 0.02;
  uint32_t message_bytes = 160;
  double abe_bytes_per_friend = 449;  // attribute-key cost model
};

struct ChatConfig {
  uint32_t peers = 3;
  uint32_t messages = 24;
  uint32_t message_bytes = 160;
};

struct CheckinConfig {
  uint32_t input_bits = 11;
  std::vector<uint32_t> slot_bytes{62, 125, 187};
  uint32_t servers = 2;
  uint32_t clients = 3;
  // Wall-time measurement: keys accumulated per sample and samples per size.
  uint32_t timing_keys = 16;
  uint32_t timing_repeats = 15;
};

struct LoadtestConfig {
  std::vector<uint32_t> hops{1, 2, 3};
  double capacity_mbps = 20;
  double interference_penalty = 0.75;
  double base_loss = 0;
  double onset_mbps = 8;
  double contention_slope = 0.143;
  double step_mbps = 0.5;
  double max_mbps = 24;
  double duration_s = 1;
  double loss_threshold = 0.001;
  double onset_tolerance = 0.25;
  uint32_t queue_frames = 64;
  double trace_duration_s = 0.05;
};

struct AdversaryConfig {
  uint32_t replay_trials = 100;
  uint32_t eavesdrop_messages = 20;
  uint32_t collusion_epochs = 100;
  uint32_t collusion_input_bits = 8;
  uint32_t collusion_slot_bytes = 64;
  uint32_t collusion_servers = 3;
  uint32_t collusion_clients = 4;
};

struct ScenarioConfig {
  uint64_t seed = 1;
  DiscoverConfig discover;
  ChatConfig chat;
  CheckinConfig checkin;
  LoadtestConfig loadtest;
  AdversaryConfig adversary;
};

// JSON with every field optional; unknown keys are an error so typos do not
// silently fall back to defaults.
absl::StatusOr<ScenarioConfig> ParseConfig(std::string_view json);
absl::StatusOr<ScenarioConfig> LoadConfig(const std::string& path);

// Canonical single-line JSON, embedded in every report.
std::string ConfigJson(const ScenarioConfig& config);

absl::Status Validate(const ScenarioConfig& config);

}  // namespace friendlink::scenario

#endif  // FRIENDLINK_SCENARIO_CONFIG_H_
