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
#include <chrono>
#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"
#include "friendlink/fss/checkin.h"
#include "friendlink/fss/database.h"
#include "friendlink/fss/dpf.h"
#include "friendlink/scenario/scenarios.h"
#include "friendlink/status_macros.h"

namespace friendlink::scenario {
namespace {

constexpr uint64_t kPublishedShareBytes = 1'468'006;

struct EpochOutcome {
  size_t recovered = 0;
  size_t collided = 0;
  bool outputs_identical = true;
  bool matches_point_sum = true;
};

// One epoch through the servers' wire interface: every client submits one
// key per server, servers seal, exchange and publish.
absl::StatusOr<EpochOutcome> RunEpoch(const DpfParams& params, uint32_t clients, Drbg& rng) {
  constexpr uint64_t kEpoch = 1;
  std::vector<CheckinServer> servers;
  for (uint32_t i = 0; i < params.party_count; ++i) servers.emplace_back(i, params);
  auto call = [](CheckinServer& s, const Bytes& req) {
    return CheckinServer::ParseResponse(s.Handle(req));
  };

  ShareDatabase expected(params);
  std::map<uint64_t, std::vector<Bytes>> by_index;
  for (uint32_t c = 0; c < clients; ++c) {
    Bytes msg = rng.RandomBytes(params.output_len - kSlotPrefixBytes);
    FL_ASSIGN_OR_RETURN(CheckIn ci, ClientCheckIn(msg, params, rng));
    for (uint32_t j = 0; j < params.party_count; ++j) {
      FL_RETURN_IF_ERROR(call(servers[j], CheckinServer::SubmitRequest(kEpoch, c, ci.keys[j])).status());
    }
    FL_ASSIGN_OR_RETURN(Bytes slot, EncodeSlot(msg, params.output_len));
    XorInto(expected.mutable_slot(ci.index), slot);
    by_index[ci.index].push_back(std::move(msg));
  }
  for (CheckinServer& s : servers) FL_RETURN_IF_ERROR(call(s, CheckinServer::SealRequest(kEpoch)).status());
  for (CheckinServer& from : servers) {
    FL_ASSIGN_OR_RETURN(Bytes exchange, from.ExchangeFor(kEpoch));
    for (CheckinServer& to : servers) {
      if (&to != &from) FL_RETURN_IF_ERROR(call(to, exchange).status());
    }
  }

  EpochOutcome out;
  std::optional<Bytes> first;
  for (CheckinServer& s : servers) {
    FL_ASSIGN_OR_RETURN(Bytes published, call(s, CheckinServer::OutputRequest(kEpoch)));
    if (!first.has_value()) first = published;
    out.outputs_identical &= published == *first;
  }
  FL_ASSIGN_OR_RETURN(ShareDatabase db,
                      ShareDatabase::FromBytes(params.domain_size(), params.output_len, *first));
  out.matches_point_sum = db == expected;
  for (const auto& [index, msgs] : by_index) {
    if (msgs.size() > 1) {
      out.collided += msgs.size();
      continue;
    }
    DecodedSlot d = DecodeSlot(db.slot(index));
    if (d.kind == SlotKind::kMessage && d.message == msgs[0]) ++out.recovered;
  }
  return out;
}

struct Timing {
  double median_us = 0;
  double min_us = 0;
  double max_us = 0;
};

// Server-side accumulation cost per key for each parameter set. Samples for
// the different sizes are interleaved so drift in machine load hits all of
// them alike; each size reports the median of its samples.
absl::StatusOr<std::vector<Timing>> TimeAccumulate(std::span<const DpfParams> sizes, uint32_t keys,
                                                   uint32_t repeats, Drbg& rng) {
  std::vector<std::vector<DpfKey>> batches(sizes.size());
  std::vector<ShareDatabase> dbs;
  for (size_t s = 0; s < sizes.size(); ++s) {
    const DpfParams& p = sizes[s];
    for (uint32_t i = 0; i < keys; ++i) {
      FL_ASSIGN_OR_RETURN(auto pair, DpfGen(rng.Uniform(p.domain_size()),
                                            rng.RandomBytes(p.output_len), p, rng));
      batches[s].push_back(std::move(pair[0]));
    }
    dbs.emplace_back(p);
    FL_RETURN_IF_ERROR(AccumulateInto(dbs.back(), batches[s][0]));  // warm-up
  }
  std::vector<std::vector<double>> samples(sizes.size());
  for (uint32_t r = 0; r < repeats; ++r) {
    for (size_t s = 0; s < sizes.size(); ++s) {
      const auto start = std::chrono::steady_clock::now();
      for (const DpfKey& k : batches[s]) FL_RETURN_IF_ERROR(AccumulateInto(dbs[s], k));
      const std::chrono::duration<double, std::micro> took =
          std::chrono::steady_clock::now() - start;
      samples[s].push_back(took.count() / keys);
    }
  }
  std::vector<Timing> out;
  for (auto& v : samples) {
    std::sort(v.begin(), v.end());
    out.push_back(Timing{v[v.size() / 2], v.front(), v.back()});
  }
  return out;
}

}  // namespace

absl::StatusOr<ScenarioOutput> RunCheckin(const ScenarioConfig& config) {
  FL_RETURN_IF_ERROR(Validate(config));
  const CheckinConfig& kc = config.checkin;
  Drbg rng = Drbg::FromSeed(config.seed).Fork("checkin");

  ScenarioOutput out;
  Report& r = out.report;
  r.scenario = "checkin";
  r.seed = config.seed;
  r.config_json = ConfigJson(config);
  Report& tr = out.timing;
  tr.scenario = "checkin-timing";
  tr.seed = config.seed;
  tr.config_json = r.config_json;

  Table& t = r.AddTable("epochs", {"slot_bytes", "slots", "servers", "clients", "key_bytes",
                                   "db_share_bytes", "recovered", "collided", "outputs_identical",
                                   "matches_point_sum"});
  Table& share = r.AddTable("share_size", {"item", "measured_bytes", "published_bytes"});
  Table& times = tr.AddTable("accumulate_time", {"slot_bytes", "median_us_per_key", "min_us",
                                                 "max_us", "keys", "repeats"});
  std::map<uint32_t, double> median;

  for (uint32_t m : kc.slot_bytes) {
    FL_ASSIGN_OR_RETURN(DpfParams params, DpfParams::Create(kc.input_bits, m, kc.servers));
    FL_ASSIGN_OR_RETURN(EpochOutcome e, RunEpoch(params, kc.clients, rng));
    const size_t key_bytes = DpfKey::WireBytes(params);
    const uint64_t db_bytes = params.domain_size() * m;
    t.Add({absl::StrCat(m), absl::StrCat(params.domain_size()), absl::StrCat(kc.servers),
           absl::StrCat(kc.clients), absl::StrCat(key_bytes), absl::StrCat(db_bytes),
           absl::StrCat(e.recovered), absl::StrCat(e.collided),
           e.outputs_identical ? "yes" : "no", e.matches_point_sum ? "yes" : "no"});
    r.Expect(absl::StrCat("servers agree, ", m, "-byte slots"), e.outputs_identical, "");
    r.Expect(absl::StrCat("output is the sum of submitted points, ", m, "-byte slots"),
             e.matches_point_sum, "");
    r.Expect(absl::StrCat("every uncollided message recovered, ", m, "-byte slots"),
             e.recovered + e.collided == kc.clients,
             absl::StrCat(e.recovered, " recovered, ", e.collided, " collided"));
    if (m == 187 && kc.input_bits == 11) {
      share.Add({"client key share per server", absl::StrCat(key_bytes),
                 absl::StrCat(kPublishedShareBytes)});
      share.Add({"server database share", absl::StrCat(db_bytes), "-"});
    }
  }

  std::vector<DpfParams> sizes;
  for (uint32_t m : kc.slot_bytes) {
    FL_ASSIGN_OR_RETURN(sizes.emplace_back(), DpfParams::Create(kc.input_bits, m, kc.servers));
  }
  Drbg timing_rng = Drbg::FromSeed(config.seed).Fork("timing");
  FL_ASSIGN_OR_RETURN(std::vector<Timing> timings,
                      TimeAccumulate(sizes, kc.timing_keys, kc.timing_repeats, timing_rng));
  for (size_t i = 0; i < sizes.size(); ++i) {
    const Timing& tm = timings[i];
    median[sizes[i].output_len] = tm.median_us;
    times.Add({absl::StrCat(sizes[i].output_len), Fixed(tm.median_us, 1), Fixed(tm.min_us, 1),
               Fixed(tm.max_us, 1), absl::StrCat(kc.timing_keys), absl::StrCat(kc.timing_repeats)});
  }

  if (median.contains(62) && median.contains(187)) {
    const double ratio = median[187] / median[62];
    tr.Expect("t(187)/t(62) within [1.5, 4.0]", ratio >= 1.5 && ratio <= 4.0, Fixed(ratio, 2));
  }
  // Growth exponent between neighbouring sizes must stay below 2.
  for (auto it = median.begin(); std::next(it) != median.end(); ++it) {
    auto nx = std::next(it);
    const double slope = std::log(nx->second / it->second) /
                         std::log(static_cast<double>(nx->first) / it->first);
    tr.Expect(absl::StrCat("sub-quadratic growth ", it->first, " -> ", nx->first), slope < 2.0,
              absl::StrCat("exponent ", Fixed(slope, 2)));
  }
  return out;
}

}  // namespace friendlink::scenario
