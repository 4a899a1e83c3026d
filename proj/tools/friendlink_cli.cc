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

// Scenario runner: executes one scenario (or all of them for `report`) and
// writes text, CSV, trace and timing files under --out.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "friendlink/scenario/config.h"
#include "friendlink/scenario/scenarios.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace fs = std::filesystem;
using namespace friendlink::scenario;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitError = 2;

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("friendlink");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] %^%l%$ %v");
  const char* level = std::getenv("FRIENDLINK_LOG");
  spdlog::set_level(level != nullptr ? spdlog::level::from_str(level) : spdlog::level::warn);
}

bool WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    spdlog::error("cannot write {}", path.string());
    return false;
  }
  spdlog::debug("wrote {} ({} bytes)", path.string(), content.size());
  return true;
}

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) absl::StrAppend(&s, l, "\n");
  return s;
}

// Runs one scenario and writes its files. Returns the check verdict, or
// nullopt on error.
std::optional<bool> RunOne(ScenarioKind kind, const ScenarioConfig& config, const fs::path& out) {
  const std::string name(ScenarioName(kind));
  spdlog::info("running {} (seed {})", name, config.seed);
  auto result = RunScenario(kind, config);
  if (!result.ok()) {
    spdlog::error("{}: {}", name, result.status().ToString());
    return std::nullopt;
  }
  const std::string text = RenderText(result->report);
  std::cout << text;
  bool ok = WriteFile(out / (name + ".txt"), text) &&
            WriteFile(out / (name + ".csv"), RenderCsv(result->report)) &&
            WriteFile(out / (name + ".trace"), JoinLines(result->trace));
  if (!result->timing.tables.empty() || !result->timing.checks.empty()) {
    const std::string timing = RenderText(result->timing);
    std::cout << "\n" << timing;
    ok = ok && WriteFile(out / (name + ".timing.txt"), timing) &&
         WriteFile(out / (name + ".timing.csv"), RenderCsv(result->timing));
  }
  if (!ok) return std::nullopt;
  spdlog::info("{}: {}", name, result->passed() ? "all checks passed" : "checks failed");
  return result->passed();
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Friend discovery, check-in and multi-hop scenario runner"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_dir = "friendlink-out";
  app.add_option("--config", config_path, "JSON scenario config")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::vector<std::pair<CLI::App*, std::optional<ScenarioKind>>> commands;
  commands.emplace_back(app.add_subcommand("discover", "Handshake, packet sizes and key storage"),
                        ScenarioKind::kDiscover);
  commands.emplace_back(app.add_subcommand("chat", "Acknowledged messaging in a group"),
                        ScenarioKind::kChat);
  commands.emplace_back(app.add_subcommand("checkin", "Anonymous check-in epochs and timing"),
                        ScenarioKind::kCheckin);
  commands.emplace_back(app.add_subcommand("loadtest", "Multi-hop offered-load sweeps"),
                        ScenarioKind::kLoadtest);
  commands.emplace_back(app.add_subcommand("adversary", "Replay, eavesdropping and collusion"),
                        ScenarioKind::kAdversary);
  commands.emplace_back(app.add_subcommand("report", "Run every scenario and summarize"),
                        std::nullopt);
  CLI11_PARSE(app, argc, argv);

  ScenarioConfig config;
  if (!config_path.empty()) {
    auto loaded = LoadConfig(config_path);
    if (!loaded.ok()) {
      spdlog::error("{}", loaded.status().ToString());
      return kExitError;
    }
    config = *loaded;
  }
  if (seed.has_value()) config.seed = *seed;
  if (auto s = Validate(config); !s.ok()) {
    spdlog::error("{}", s.ToString());
    return kExitError;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    spdlog::error("cannot create {}: {}", out_dir, ec.message());
    return kExitError;
  }

  for (const auto& [cmd, kind] : commands) {
    if (!cmd->parsed()) continue;
    if (kind.has_value()) {
      auto verdict = RunOne(*kind, config, out_dir);
      if (!verdict.has_value()) return kExitError;
      return *verdict ? 0 : kExitFailedCheck;
    }
    Report summary;
    summary.scenario = "report";
    summary.seed = config.seed;
    summary.config_json = ConfigJson(config);
    Table& t = summary.AddTable("scenarios", {"scenario", "result", "files"});
    for (ScenarioKind k : kAllScenarios) {
      auto verdict = RunOne(k, config, out_dir);
      std::cout << "\n";
      if (!verdict.has_value()) return kExitError;
      const std::string name(ScenarioName(k));
      t.Add({name, *verdict ? "PASS" : "FAIL", absl::StrCat(name, ".{txt,csv,trace}")});
      summary.Expect(name, *verdict, "");
    }
    const std::string text = RenderText(summary);
    std::cout << text;
    if (!WriteFile(fs::path(out_dir) / "report.txt", text) ||
        !WriteFile(fs::path(out_dir) / "report.csv", RenderCsv(summary))) {
      return kExitError;
    }
    return summary.passed() ? 0 : kExitFailedCheck;
  }
  return kExitError;
}
