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

#include "friendlink/netsim/load_test.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "friendlink/status_macros.h"

namespace friendlink::netsim {

double EffectiveCapacity(uint32_t hops, const NetworkConfig& config) {
  return config.link.capacity_bps * std::pow(config.interference_penalty, hops - 1.0);
}

absl::StatusOr<Chain> BuildChain(uint32_t hops, const NetworkConfig& config) {
  if (hops < 1) return absl::InvalidArgumentError("a chain needs at least one hop");
  if (config.link.capacity_bps <= 0) return absl::InvalidArgumentError("capacity must be positive");
  if (config.interference_penalty <= 0 || config.interference_penalty > 1) {
    return absl::InvalidArgumentError("interference penalty must be in (0, 1]");
  }
  Chain chain{Network(config), 0, hops, hops};
  const double cap = EffectiveCapacity(hops, config);
  for (uint32_t i = 0; i <= hops; ++i) chain.net.AddNode(/*relay=*/i > 0 && i < hops);
  for (uint32_t i = 0; i < hops; ++i) {
    LinkId l = chain.net.AddLink(cap);
    FL_RETURN_IF_ERROR(chain.net.Attach(i, Interface::kP2p, l));
    FL_RETURN_IF_ERROR(chain.net.Attach(i + 1, Interface::kLegacy, l));
  }
  return chain;
}

absl::StatusOr<LoadResult> RunLoadTest(uint32_t hops, const NetworkConfig& config,
                                       double offered_bps, double duration_s) {
  if (offered_bps <= 0 || duration_s <= 0) {
    return absl::InvalidArgumentError("load and duration must be positive");
  }
  FL_ASSIGN_OR_RETURN(Chain chain, BuildChain(hops, config));
  // Throughput counts only what reaches the tail inside the window; loss
  // counts every frame, including those still queued when it closes.
  const auto window_end = static_cast<TimeUs>(duration_s * 1e6);
  uint64_t window_bits = 0;
  chain.net.SetReceiver([&](const Delivery& d) {
    if (d.node == chain.tail && !d.overheard && d.time <= window_end) {
      window_bits += d.payload->size() * 8;
    }
  });
  const double interval_us = kLoadFrameBytes * 8.0 * 1e6 / offered_bps;
  const auto frames = static_cast<uint64_t>(std::floor(duration_s * 1e6 / interval_us));
  for (uint64_t i = 0; i < frames; ++i) {
    const auto at = static_cast<TimeUs>(std::floor(i * interval_us));
    FL_RETURN_IF_ERROR(chain.net.Send(chain.head, chain.tail, Bytes(kLoadFrameBytes), at));
  }
  chain.net.Drain();
  const NetworkStats& s = chain.net.stats();
  LoadResult r;
  r.hops = hops;
  r.offered_bps = offered_bps;
  r.sent = s.unicast_sent;
  r.delivered = s.unicast_delivered;
  r.dropped = s.unicast_dropped;
  r.throughput_bps = static_cast<double>(window_bits) / duration_s;
  r.loss = r.sent == 0 ? 0.0 : static_cast<double>(r.dropped) / static_cast<double>(r.sent);
  return r;
}

absl::StatusOr<std::vector<LoadResult>> Sweep(uint32_t hops, const NetworkConfig& config,
                                              std::span<const double> loads_bps,
                                              double duration_s) {
  std::vector<LoadResult> out;
  for (double load : loads_bps) {
    FL_ASSIGN_OR_RETURN(LoadResult r, RunLoadTest(hops, config, load, duration_s));
    out.push_back(r);
  }
  return out;
}

std::optional<double> LossOnset(std::span<const LoadResult> sweep, double threshold) {
  for (const LoadResult& r : sweep) {
    if (r.loss > threshold) return r.offered_bps;
  }
  return std::nullopt;
}

std::vector<double> LoadSteps(double step_bps, double max_bps) {
  std::vector<double> out;
  for (int i = 1; i * step_bps <= max_bps + 1e-9; ++i) out.push_back(i * step_bps);
  return out;
}

std::string SweepCsv(std::span<const LoadResult> results) {
  std::string out = "hops,offered_mbps,throughput_mbps,loss,sent,delivered\n";
  for (const LoadResult& r : results) {
    absl::StrAppendFormat(&out, "%d,%.2f,%.4f,%.6f,%d,%d\n", r.hops, r.offered_bps / 1e6,
                          r.throughput_bps / 1e6, r.loss, r.sent, r.delivered);
  }
  return out;
}

}  // namespace friendlink::netsim
