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

#include "friendlink/scenario/scenarios.h"

#include "absl/strings/str_cat.h"

namespace friendlink::scenario {

std::string_view ScenarioName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kDiscover: return "discover";
    case ScenarioKind::kChat: return "chat";
    case ScenarioKind::kCheckin: return "checkin";
    case ScenarioKind::kLoadtest: return "loadtest";
    case ScenarioKind::kAdversary: return "adversary";
  }
  return "unknown";
}

absl::StatusOr<ScenarioKind> ParseScenarioKind(std::string_view name) {
  for (ScenarioKind k : kAllScenarios) {
    if (ScenarioName(k) == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown scenario ", std::string(name)));
}

absl::StatusOr<ScenarioOutput> RunScenario(ScenarioKind kind, const ScenarioConfig& config) {
  switch (kind) {
    case ScenarioKind::kDiscover: return RunDiscover(config);
    case ScenarioKind::kChat: return RunChat(config);
    case ScenarioKind::kCheckin: return RunCheckin(config);
    case ScenarioKind::kLoadtest: return RunLoadtest(config);
    case ScenarioKind::kAdversary: return RunAdversary(config);
  }
  return absl::InvalidArgumentError("unknown scenario");
}

}  // namespace friendlink::scenario
