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

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"
#include "friendlink/netsim/load_test.h"
#include "friendlink/scenario/scenarios.h"
#include "friendlink/status_macros.h"

namespace friendlink::scenario {

absl::StatusOr<ScenarioOutput> RunLoadtest(const ScenarioConfig& config) {
  FL_RETURN_IF_ERROR(Validate(config));
  const LoadtestConfig& lc = config.loadtest;

  netsim::NetworkConfig nc;
  nc.link.capacity_bps = lc.capacity_mbps * 1e6;
  nc.link.base_loss = lc.base_loss;
  nc.link.contention_onset_bps = lc.onset_mbps * 1e6;
  nc.link.contention_slope = lc.contention_slope;
  nc.interference_penalty = lc.interference_penalty;
  nc.queue_frames = lc.queue_frames;
  nc.seed = Drbg::FromSeed(config.seed).Fork("loadtest").NextU64();

  ScenarioOutput out;
  Report& r = out.report;
  r.scenario = "loadtest";
  r.seed = config.seed;
  r.config_json = ConfigJson(config);

  const std::vector<double> loads = netsim::LoadSteps(lc.step_mbps * 1e6, lc.max_mbps * 1e6);
  std::map<uint32_t, std::vector<netsim::LoadResult>> sweeps;
  for (uint32_t h : lc.hops) {
    FL_ASSIGN_OR_RETURN(sweeps[h], netsim::Sweep(h, nc, loads, lc.duration_s));
  }

  Table& sweep = r.AddTable("sweep", {"hops", "offered_mbps", "throughput_mbps", "loss", "sent",
                                      "delivered"});
  for (const auto& [h, results] : sweeps) {
    for (const netsim::LoadResult& x : results) {
      sweep.Add({absl::StrCat(h), Fixed(x.offered_bps / 1e6, 2), Fixed(x.throughput_bps / 1e6, 4),
                 Fixed(x.loss, 6), absl::StrCat(x.sent), absl::StrCat(x.delivered)});
    }
  }

  Table& summary = r.AddTable("summary", {"hops", "link_capacity_mbps", "max_throughput_mbps",
                                          "loss_onset_mbps"});
  std::map<uint32_t, double> peak;
  for (const auto& [h, results] : sweeps) {
    double best = 0;
    for (const netsim::LoadResult& x : results) best = std::max(best, x.throughput_bps);
    peak[h] = best;
    auto onset = netsim::LossOnset(results, lc.loss_threshold);
    summary.Add({absl::StrCat(h), Fixed(netsim::EffectiveCapacity(h, nc) / 1e6, 2),
                 Fixed(best / 1e6, 2), onset ? Fixed(*onset / 1e6, 2) : "none"});

    bool monotone = true;
    for (size_t i = 1; i < results.size(); ++i) monotone &= results[i].loss >= results[i - 1].loss;
    r.Expect(absl::StrCat("loss non-decreasing in load, ", h, " hop"), monotone, "");
    const double target = lc.onset_mbps * 1e6;
    const bool near = onset.has_value() && std::abs(*onset - target) <= lc.onset_tolerance * target;
    r.Expect(absl::StrCat("loss onset within ", Fixed(lc.onset_tolerance * 100, 0), "% of ",
                          Fixed(lc.onset_mbps, 1), " Mbps, ", h, " hop"),
             near, onset ? absl::StrCat(Fixed(*onset / 1e6, 2), " Mbps") : "no loss observed");
  }
  for (auto it = peak.begin(); std::next(it) != peak.end(); ++it) {
    auto nx = std::next(it);
    r.Expect(absl::StrCat("max throughput ", it->first, " hop >= ", nx->first, " hop"),
             it->second >= nx->second,
             absl::StrCat(Fixed(it->second / 1e6, 2), " vs ", Fixed(nx->second / 1e6, 2), " Mbps"));
  }

  // Full event trace of one short run per chain at the configured knee.
  for (uint32_t h : lc.hops) {
    netsim::NetworkConfig traced = nc;
    traced.record_trace = true;
    FL_ASSIGN_OR_RETURN(netsim::Chain chain, netsim::BuildChain(h, traced));
    const double interval_us = netsim::kLoadFrameBytes * 8.0 * 1e6 / (lc.onset_mbps * 1e6);
    const auto frames = static_cast<uint64_t>(lc.trace_duration_s * 1e6 / interval_us);
    for (uint64_t i = 0; i < frames; ++i) {
      FL_RETURN_IF_ERROR(chain.net.Send(chain.head, chain.tail, Bytes(netsim::kLoadFrameBytes),
                                        static_cast<netsim::TimeUs>(i * interval_us)));
    }
    chain.net.Drain();
    out.trace.push_back(absl::StrCat("# hops=", h, " load=", Fixed(lc.onset_mbps, 2),
                                     " Mbps: time,event,node,frame,src,dst,bytes,outcome"));
    out.trace.insert(out.trace.end(), chain.net.trace().begin(), chain.net.trace().end());
  }
  return out;
}

}  // namespace friendlink::scenario
