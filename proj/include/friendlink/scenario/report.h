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

#ifndef FRIENDLINK_SCENARIO_REPORT_H_
#define FRIENDLINK_SCENARIO_REPORT_H_

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace friendlink::scenario {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void Add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

// A scenario's results. Everything in it is a function of (config, seed);
// wall-clock measurements go in a separate timing report.
struct Report {
  std::string scenario;
  uint64_t seed = 0;
  std::string config_json;
  std::deque<Table> tables;  // stable references across AddTable
  std::vector<Check> checks;

  Table& AddTable(std::string name, std::vector<std::string> columns);
  void Expect(std::string name, bool pass, std::string detail);
  bool passed() const;
};

// Aligned plain-text tables followed by the check list.
std::string RenderText(const Report& report);

// Comment header with scenario, seed and config, then each table as a CSV
// block introduced by "# table <name>", then the checks.
std::string RenderCsv(const Report& report);

// Fixed-precision number formatting shared by all scenarios.
std::string Fixed(double value, int digits);

}  // namespace friendlink::scenario

#endif  // FRIENDLINK_SCENARIO_REPORT_H_
