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

#include "absl/strings/str_cat.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/scenario/scenarios.h"
#include "friendlink/status_macros.h"
#include "gathering.h"

namespace friendlink::scenario {
namespace {

// Published reference points shown next to our figures.
constexpr double kPublishedSetupBytes = 2516.59;
constexpr size_t kPublishedBodyBytes = 176;

std::string Kilobytes(double bytes) { return absl::StrCat(Fixed(bytes / 1000.0, 2), " kB"); }

struct DiscoverRun {
  uint32_t friends = 0;
  BloomParams params;
  GatheringStats stats;
  size_t peers = 0;
  size_t stored_bytes = 0;
  size_t one_cert_update = 0;
  double abe_bytes = 0;
  std::vector<std::string> trace;
};

}  // namespace

absl::StatusOr<ScenarioOutput> RunDiscover(const ScenarioConfig& config) {
  FL_RETURN_IF_ERROR(Validate(config));
  const DiscoverConfig& dc = config.discover;
  // The same people in every run; only the initiator's friend list grows.
  const uint64_t people_seed = Drbg::FromSeed(config.seed).Fork("discover").NextU64();

  std::vector<DiscoverRun> runs;
  for (uint32_t friends : dc.friend_counts) {
    GatheringSpec spec{friends, dc.connected, dc.bystanders, dc.fpp};
    FL_ASSIGN_OR_RETURN(auto g, Gathering::Create(people_seed, spec));
    FL_RETURN_IF_ERROR(g->Discover());
    for (uint32_t i = 0; i < g->initiator().peers().size(); ++i) {
      FL_RETURN_IF_ERROR(g->SendToPeer(i, dc.message_bytes));
    }
    DiscoverRun run;
    run.friends = friends;
    FL_ASSIGN_OR_RETURN(run.params, DeriveParams(friends, dc.fpp));
    run.stats = g->stats();
    run.peers = g->initiator().peers().size();
    run.stored_bytes = g->initiator().cert_repository().StoredBytes();
    run.one_cert_update =
        EncodeFrame(CertUpdate{{g->initiator().own_certificate()}}).size() - 1;
    run.abe_bytes = dc.abe_bytes_per_friend * friends;
    run.trace = g->Trace(absl::StrCat("friends=", friends));
    runs.push_back(std::move(run));
  }

  ScenarioOutput out;
  Report& r = out.report;
  r.scenario = "discover";
  r.seed = config.seed;
  r.config_json = ConfigJson(config);

  Table& sizes = r.AddTable("packet_sizes", {"friends", "fpp", "m_bits", "k", "setup_accounted",
                                             "setup_wire", "reply_wire", "update_wire",
                                             "data_body", "data_wire"});
  for (const DiscoverRun& run : runs) {
    const GatheringStats& s = run.stats;
    sizes.Add({absl::StrCat(run.friends), Fixed(dc.fpp, 3), absl::StrCat(run.params.m_bits),
               absl::StrCat(run.params.k_hashes), absl::StrCat(s.setup_accounted),
               absl::StrCat(s.setup_wire), absl::StrCat(s.reply_wire),
               absl::StrCat(s.update_wire), absl::StrCat(s.data_body_bytes),
               absl::StrCat(s.data_wire)});
  }

  // Certificate-update frame carrying one certificate, without its tag byte.
  const size_t one_cert_update = runs[0].one_cert_update;
  Table& refs = r.AddTable("reference_sizes", {"item", "measured_bytes", "published_bytes"});
  for (const DiscoverRun& run : runs) {
    if (run.friends == 1000 && std::abs(dc.fpp - 0.02) < 1e-12) {
      refs.Add({"setup request (1000 friends, fpp 0.02)", absl::StrCat(run.stats.setup_accounted),
                Fixed(kPublishedSetupBytes, 2)});
    }
  }
  refs.Add({"certificate update (one certificate)", absl::StrCat(one_cert_update),
            absl::StrCat(kCertificateWireBytes)});
  refs.Add({absl::StrCat("data body (", dc.message_bytes, "-byte message)"),
            absl::StrCat(runs[0].stats.data_body_bytes),
            dc.message_bytes == 160 ? absl::StrCat(kPublishedBodyBytes) : "-"});

  Table& storage = r.AddTable("key_storage", {"friends", "connected", "stored_bytes", "stored",
                                              "abe_model", "published_stored", "published_abe"});
  for (const DiscoverRun& run : runs) {
    std::string pub_abe = run.friends == 100 ? "44.90 kB" : run.friends == 1000 ? "449.00 kB" : "-";
    std::string pub_stored = run.friends == 100 || run.friends == 1000 ? "4.52 kB" : "-";
    storage.Add({absl::StrCat(run.friends), absl::StrCat(run.peers),
                 absl::StrCat(run.stored_bytes), Kilobytes(run.stored_bytes),
                 Kilobytes(run.abe_bytes), pub_stored, pub_abe});
  }

  Table& flow = r.AddTable("handshake", {"friends", "accepted", "ignored", "rejected", "cf_opened",
                                         "update_certs", "update_admissions", "delivered",
                                         "acks", "overheard", "overheard_opened"});
  for (const DiscoverRun& run : runs) {
    const GatheringStats& s = run.stats;
    flow.Add({absl::StrCat(run.friends), absl::StrCat(s.accepted), absl::StrCat(s.ignored),
              absl::StrCat(s.rejected), absl::StrCat(s.cf_opened), absl::StrCat(s.update_certs),
              absl::StrCat(s.update_admissions), absl::StrCat(s.data_delivered),
              absl::StrCat(s.acks), absl::StrCat(s.overheard_data),
              absl::StrCat(s.overheard_opened)});
  }

  // Checks.
  bool same_storage = true;
  bool abe_linear = true;
  for (const DiscoverRun& run : runs) {
    same_storage &= run.stored_bytes == runs[0].stored_bytes;
    abe_linear &= run.abe_bytes * runs[0].friends == runs[0].abe_bytes * run.friends;
  }
  r.Expect("stored key bytes independent of friend-list size", same_storage,
           absl::StrCat(runs[0].stored_bytes, " bytes"));
  std::string ratio = "single size";
  if (runs.size() > 1) ratio = absl::StrCat("x", Fixed(runs.back().abe_bytes / runs[0].abe_bytes, 2));
  r.Expect("attribute-key model scales with friend count", abe_linear, ratio);
  for (const DiscoverRun& run : runs) {
    if (run.friends == 1000 && std::abs(dc.fpp - 0.02) < 1e-12) {
      const double rel = std::abs(run.stats.setup_accounted - kPublishedSetupBytes) /
                         kPublishedSetupBytes;
      r.Expect("setup request within 1% of published size", rel <= 0.01,
               absl::StrCat(run.stats.setup_accounted, " vs ", Fixed(kPublishedSetupBytes, 2)));
    }
  }
  r.Expect("single-certificate update size", one_cert_update == kCertificateWireBytes,
           absl::StrCat(one_cert_update, " bytes"));
  bool bodies = true, joined = true, strangers = true, delivered = true, sealed = true;
  for (const DiscoverRun& run : runs) {
    const GatheringStats& s = run.stats;
    bodies &= s.data_body_bytes == SymBodyLength(dc.message_bytes);
    joined &= run.peers == dc.connected && s.accepted == dc.connected;
    strangers &= s.ignored + s.rejected == dc.bystanders;  // a filter false positive rejects
    delivered &= s.data_intact == run.peers && s.acks == run.peers;
    sealed &= s.overheard_opened == 0;
  }
  r.Expect("data body size", bodies,
           absl::StrCat(dc.message_bytes, " -> ", SymBodyLength(dc.message_bytes), " bytes"));
  r.Expect("every present friend joined", joined, absl::StrCat(dc.connected, " peers"));
  r.Expect("no stranger joined", strangers, absl::StrCat(dc.bystanders, " strangers"));
  r.Expect("messages delivered intact and acknowledged", delivered, "");
  r.Expect("no overheard message opened", sealed, "");

  for (DiscoverRun& run : runs) {
    out.trace.insert(out.trace.end(), run.trace.begin(), run.trace.end());
  }
  return out;
}

}  // namespace friendlink::scenario
