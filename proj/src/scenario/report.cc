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

#include "friendlink/scenario/report.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace friendlink::scenario {

Table& Report::AddTable(std::string name, std::vector<std::string> columns) {
  tables.push_back(Table{std::move(name), std::move(columns), {}});
  return tables.back();
}

void Report::Expect(std::string name, bool pass, std::string detail) {
  checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Fixed(double value, int digits) { return absl::StrFormat("%.*f", digits, value); }

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string CsvRow(const std::vector<std::string>& cells) {
  std::vector<std::string> quoted;
  quoted.reserve(cells.size());
  for (const auto& c : cells) quoted.push_back(CsvField(c));
  return absl::StrJoin(quoted, ",");
}

void RenderTable(const Table& t, std::string& out) {
  std::vector<size_t> width(t.columns.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  widen(t.columns);
  for (const auto& row : t.rows) widen(row);

  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (size_t i = 0; i < width.size(); ++i) {
      const std::string& cell = i < row.size() ? row[i] : "";
      if (i > 0) s += "  ";
      // First column left-aligned, the rest right-aligned.
      s += i == 0 ? absl::StrFormat("%-*s", width[i], cell) : absl::StrFormat("%*s", width[i], cell);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  absl::StrAppend(&out, "[", t.name, "]\n", line(t.columns));
  size_t total = 0;
  for (size_t w : width) total += w;
  absl::StrAppend(&out, std::string(total + 2 * (width.size() - 1), '-'), "\n");
  for (const auto& row : t.rows) out += line(row);
  out += "\n";
}

}  // namespace

std::string RenderText(const Report& r) {
  std::string out = absl::StrCat("scenario: ", r.scenario, "\nseed: ", r.seed,
                                 "\nconfig: ", r.config_json, "\n\n");
  for (const Table& t : r.tables) RenderTable(t, out);
  size_t failed = 0;
  for (const Check& c : r.checks) {
    absl::StrAppend(&out, c.pass ? "PASS  " : "FAIL  ", c.name);
    if (!c.detail.empty()) absl::StrAppend(&out, " (", c.detail, ")");
    out += "\n";
    if (!c.pass) ++failed;
  }
  absl::StrAppend(&out, "\n", r.checks.size() - failed, "/", r.checks.size(), " checks passed\n");
  return out;
}

std::string RenderCsv(const Report& r) {
  std::string out = absl::StrCat("# scenario=", r.scenario, "\n# seed=", r.seed,
                                 "\n# config=", r.config_json, "\n");
  for (const Table& t : r.tables) {
    absl::StrAppend(&out, "# table ", t.name, "\n", CsvRow(t.columns), "\n");
    for (const auto& row : t.rows) absl::StrAppend(&out, CsvRow(row), "\n");
  }
  out += "# table checks\ncheck,result,detail\n";
  for (const Check& c : r.checks) {
    absl::StrAppend(&out, CsvRow({c.name, c.pass ? "PASS" : "FAIL", c.detail}), "\n");
  }
  return out;
}

}  // namespace friendlink::scenario
