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

#ifndef FRIENDLINK_SCENARIO_SCENARIOS_H_
#define FRIENDLINK_SCENARIO_SCENARIOS_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "friendlink/scenario/config.h"
#include "friendlink/scenario/report.h"

namespace friendlink::scenario {

enum class ScenarioKind { kDiscover, kChat, kCheckin, kLoadtest, kAdversary };

inline constexpr ScenarioKind kAllScenarios[] = {ScenarioKind::kDiscover, ScenarioKind::kChat,
                                                 ScenarioKind::kCheckin, ScenarioKind::kLoadtest,
                                                 ScenarioKind::kAdversary};

std::string_view ScenarioName(ScenarioKind kind);
absl::StatusOr<ScenarioKind> ParseScenarioKind(std::string_view name);

struct ScenarioOutput {
  Report report;                   // reproducible from (config, seed)
  std::vector<std::string> trace;  // reproducible as well
  Report timing;                   // wall-clock measurements and their checks

  bool passed() const { return report.passed() && timing.passed(); }
};

// Packet sizes, key storage against friend-list size, and the attribute-key
// cost model, for each configured friend-list size.
absl::StatusOr<ScenarioOutput> RunDiscover(const ScenarioConfig& config);

// Acknowledged message ring among a discovered group, with a stranger
// listening in.
absl::StatusOr<ScenarioOutput> RunChat(const ScenarioConfig& config);

// Anonymous check-in epochs across the configured slot sizes, plus server
// accumulation timing.
absl::StatusOr<ScenarioOutput> RunCheckin(const ScenarioConfig& config);

// Offered-load sweeps over 1 to 3 hop chains.
absl::StatusOr<ScenarioOutput> RunLoadtest(const ScenarioConfig& config);

// Replay, common-friend eavesdropping and server collusion.
absl::StatusOr<ScenarioOutput> RunAdversary(const ScenarioConfig& config);

absl::StatusOr<ScenarioOutput> RunScenario(ScenarioKind kind, const ScenarioConfig& config);

}  // namespace friendlink::scenario

#endif  // FRIENDLINK_SCENARIO_SCENARIOS_H_
