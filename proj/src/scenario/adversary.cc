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

#include <cmath>
#include <map>
#include <set>

#include "absl/strings/str_cat.h"
#include "friendlink/fss/checkin.h"
#include "friendlink/fss/database.h"
#include "friendlink/scenario/scenarios.h"
#include "friendlink/status_macros.h"
#include "gathering.h"

namespace friendlink::scenario {
namespace {

// Chance that a uniformly random slot of `m` bytes passes length-prefix
// validation: prefix L in [1, m-2] and the m-2-L padding bytes all zero.
double ChanceValidSlot(uint32_t m) {
  double p = 0;
  for (uint32_t len = 1; len + kSlotPrefixBytes <= m; ++len) {
    p += std::pow(2.0, -16.0 - 8.0 * (m - kSlotPrefixBytes - len));
  }
  return p;
}

}  // namespace

absl::StatusOr<ScenarioOutput> RunAdversary(const ScenarioConfig& config) {
  FL_RETURN_IF_ERROR(Validate(config));
  const AdversaryConfig& ac = config.adversary;
  Drbg rng = Drbg::FromSeed(config.seed).Fork("adversary");

  ScenarioOutput out;
  Report& r = out.report;
  r.scenario = "adversary";
  r.seed = config.seed;
  r.config_json = ConfigJson(config);
  Table& t = r.AddTable("adversary", {"attack", "metric", "value"});

  // Replay: a captured setup request presented again after the initiator's
  // certificate has expired, to fresh target sessions.
  {
    constexpr uint32_t kFriends = 4;
    FL_ASSIGN_OR_RETURN(auto g, Gathering::Create(rng.NextU64(), {kFriends, kFriends, 0, 0.02}));
    FL_RETURN_IF_ERROR(g->Discover());
    const SetupRequest captured = *g->last_request();
    const bool control = g->FreshSession(g->peer_node(0)).ProcessSetupRequest(captured, kProtocolNow)
                             .verdict == SetupVerdict::kAccept;
    size_t established = 0;
    std::map<std::string, size_t> reasons;
    for (uint32_t trial = 0; trial < ac.replay_trials; ++trial) {
      Session target = g->FreshSession(g->peer_node(trial % kFriends));
      const Timestamp later = kCertNotAfter + 1 + Timestamp{trial} * 3600;
      SetupOutcome o = target.ProcessSetupRequest(captured, later);
      if (o.verdict == SetupVerdict::kAccept) ++established;
      reasons[o.reason ? std::string(RejectReasonName(*o.reason))
                       : std::string(SetupVerdictName(o.verdict))]++;
    }
    t.Add({"replay", "trials", absl::StrCat(ac.replay_trials)});
    t.Add({"replay", "accepted before expiry (control)", control ? "yes" : "no"});
    t.Add({"replay", "sessions established", absl::StrCat(established)});
    for (const auto& [why, n] : reasons) t.Add({"replay", absl::StrCat("outcome ", why), absl::StrCat(n)});
    r.Expect("replayed expired setup never establishes a session", established == 0 && control,
             absl::StrCat(established, "/", ac.replay_trials));
    out.trace = g->Trace("replay");
  }

  // Common friend: friend of both ends, sharing the medium. It can identify
  // the initiator and read its CF, but not the messages that follow.
  {
    FL_ASSIGN_OR_RETURN(auto g, Gathering::Create(rng.NextU64(), {2, 2, 1, 0.02}));
    FL_RETURN_IF_ERROR(g->Discover());
    for (uint32_t i = 0; i < ac.eavesdrop_messages; ++i) {
      FL_RETURN_IF_ERROR(g->SendToPeer(0, kMaxMessageBytes));
    }
    const GatheringStats& s = g->stats();
    t.Add({"common friend", "CF read by friends of the initiator", absl::StrCat(s.cf_opened)});
    t.Add({"common friend", "data frames overheard", absl::StrCat(s.overheard_data)});
    t.Add({"common friend", "overheard payloads decrypted", absl::StrCat(s.overheard_opened)});
    r.Expect("common friend decrypts no stage-4/5 payload",
             s.overheard_opened == 0 && s.overheard_data >= 2 * ac.eavesdrop_messages &&
                 s.cf_opened == 2,
             absl::StrCat(s.overheard_opened, "/", s.overheard_data));
    auto more = g->Trace("common_friend");
    out.trace.insert(out.trace.end(), more.begin(), more.end());
  }

  // Collusion: every set of p-1 servers pools its accumulated shares.
  {
    FL_ASSIGN_OR_RETURN(DpfParams params, DpfParams::Create(ac.collusion_input_bits,
                                                            ac.collusion_slot_bytes,
                                                            ac.collusion_servers));
    const uint32_t p = params.party_count;
    size_t valid_prefix = 0, recovered_by_colluders = 0, recovered_by_all = 0, submitted = 0;
    size_t collided = 0;
    for (uint32_t e = 0; e < ac.collusion_epochs; ++e) {
      std::vector<Epoch> epochs;
      for (uint32_t j = 0; j < p; ++j) epochs.emplace_back(e, params);
      std::set<Bytes> messages;
      std::map<uint64_t, int> hits;
      for (uint32_t c = 0; c < ac.collusion_clients; ++c) {
        const size_t len = 1 + rng.Uniform(params.output_len - kSlotPrefixBytes);
        Bytes msg = rng.RandomBytes(len);
        FL_ASSIGN_OR_RETURN(CheckIn ci, ClientCheckIn(msg, params, rng));
        for (uint32_t j = 0; j < p; ++j) FL_RETURN_IF_ERROR(epochs[j].Accumulate(ci.keys[j]));
        messages.insert(std::move(msg));
        ++hits[ci.index];
        ++submitted;
      }
      for (const auto& [index, n] : hits) collided += n > 1 ? n : 0;

      auto count = [&](const ShareDatabase& view, size_t& valid, size_t& real) {
        for (uint64_t i = 0; i < view.slots(); ++i) {
          DecodedSlot d = DecodeSlot(view.slot(i));
          if (d.kind != SlotKind::kMessage) continue;
          ++valid;
          if (messages.contains(d.message)) ++real;
        }
      };
      for (uint32_t honest = 0; honest < p; ++honest) {
        ShareDatabase view(params);
        for (uint32_t j = 0; j < p; ++j) {
          if (j != honest) FL_RETURN_IF_ERROR(view.XorWith(epochs[j].delta()));
        }
        count(view, valid_prefix, recovered_by_colluders);
      }
      ShareDatabase all(params);
      for (uint32_t j = 0; j < p; ++j) FL_RETURN_IF_ERROR(all.XorWith(epochs[j].delta()));
      size_t unused = 0;
      count(all, unused, recovered_by_all);
    }
    const double views = static_cast<double>(ac.collusion_epochs) * p * params.domain_size();
    const double expected = views * ChanceValidSlot(params.output_len);
    t.Add({"collusion", "servers / colluders", absl::StrCat(p, " / ", p - 1)});
    t.Add({"collusion", "epochs", absl::StrCat(ac.collusion_epochs)});
    t.Add({"collusion", "messages submitted", absl::StrCat(submitted)});
    t.Add({"collusion", "recovered with all servers", absl::StrCat(recovered_by_all)});
    t.Add({"collusion", "collided", absl::StrCat(collided)});
    t.Add({"collusion", "slots inspected by colluders", Fixed(views, 0)});
    t.Add({"collusion", "recovered by colluders", absl::StrCat(recovered_by_colluders)});
    t.Add({"collusion", "slots passing prefix check", absl::StrCat(valid_prefix)});
    t.Add({"collusion", "expected by chance", Fixed(expected, 3)});
    r.Expect("p-1 colluding servers recover no message",
             recovered_by_colluders == 0 && recovered_by_all + collided == submitted,
             absl::StrCat(recovered_by_colluders, " of ", submitted));
    // A pooled view that is not pseudorandom would pass far more often.
    const double bound = expected + 6 * std::sqrt(expected) + 1;
    r.Expect("prefix passes stay at chance level", valid_prefix <= bound,
             absl::StrCat(valid_prefix, " observed, ", Fixed(expected, 3), " expected"));
  }
  return out;
}

}  // namespace friendlink::scenario
