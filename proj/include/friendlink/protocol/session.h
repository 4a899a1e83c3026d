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

#ifndef FRIENDLINK_PROTOCOL_SESSION_H_
#define FRIENDLINK_PROTOCOL_SESSION_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "friendlink/crypto/asymmetric.h"
#include "friendlink/drbg.h"
#include "friendlink/identity/identity.h"
#include "friendlink/keymgmt/keymgmt.h"
#include "friendlink/protocol/messages.h"

namespace friendlink {

enum class Role { kInitiator, kTarget };
enum class Phase { kInit, kDiscovering, kConnected, kClosed };
std::string_view RoleName(Role role);
std::string_view PhaseName(Phase phase);

// Friend ID masks, expanded once per filter length and reused for every
// request of that length.
class FriendMasks {
 public:
  explicit FriendMasks(FriendList friends) : friends_(std::move(friends)) {}

  // The friend whose expanded ID equals `mask`, if any.
  std::optional<CompositeId> Match(const BitArray& mask);
  const FriendList& friends() const { return friends_; }

 private:
  FriendList friends_;
  std::map<size_t, std::vector<std::pair<Bytes, CompositeId>>> by_length_;
};

// Recovers the initiator's ID mask from a request and looks it up among
// `masks`. Anyone who is a friend of the initiator can do this.
std::optional<CompositeId> IdentifyInitiator(FriendMasks& masks, const SetupRequest& req);

enum class SetupVerdict { kAccept, kIgnore, kReject };
enum class RejectReason { kNotAddressed, kUnknownInitiator, kCertInvalid, kDecryptFailed };
std::string_view SetupVerdictName(SetupVerdict verdict);
std::string_view RejectReasonName(RejectReason reason);

struct SetupOutcome {
  SetupVerdict verdict = SetupVerdict::kIgnore;
  std::optional<RejectReason> reason;
  std::optional<SetupReply> reply;
  std::optional<CompositeId> initiator;
};

struct InitializationResult {
  CertUpdate update;
  // One entry per reply that was dropped.
  std::vector<std::string> dropped;
};

struct ReceivedMessage {
  Bytes plaintext;
  std::optional<DataMessage> ack;
};

// Everything a node brings into a session: its identity, key material and
// the outcome of the key-distribution round.
struct SessionInit {
  Role role = Role::kTarget;
  NodeId node = 0;
  CompositeId self;
  FriendList friends;
  SharedKeyRepository skr;
  MasterGraph master;
  uint64_t rng_seed = 0;
};

// Per-node protocol state. Owned by a single node and driven by its event
// loop; not thread-safe.
class Session {
 public:
  Session(SessionInit init, KeyPair keys, Certificate own_cert);

  // Stage 1. Initiator only, and only before any discovery has run.
  absl::StatusOr<SetupRequest> BuildSetupRequest(std::span<const CompositeId> targets,
                                                 const BloomParams& params, Timestamp now);

  // Stage 2, target side.
  SetupOutcome ProcessSetupRequest(const SetupRequest& req, Timestamp now);

  // Stage 3, initiator side: admits reply certificates and produces the
  // group update (peers plus the initiator's own certificate).
  absl::StatusOr<InitializationResult> CompleteInitialization(std::span<const SetupReply> replies,
                                                              Timestamp now);

  // Stage 4. Fresh symmetric key per message, wrapped to the recipient.
  absl::StatusOr<DataMessage> SendMessage(const CompositeId& recipient, ByteSpan plaintext);

  // Stage 5. PermissionDenied if the key was not wrapped for this node,
  // DataLoss if the body fails its integrity check. When `reply_to` names a
  // peer, an acknowledgment addressed to it is produced as well.
  absl::StatusOr<ReceivedMessage> ReceiveMessage(const DataMessage& msg,
                                                 const CompositeId* reply_to = nullptr);

  // Re-admits every certificate in `update`; returns one verdict per entry
  // (the node's own certificate is skipped and reported as accepted).
  absl::StatusOr<std::vector<Admission>> ApplyCertUpdate(const CertUpdate& update, Timestamp now);

  void Close() { phase_ = Phase::kClosed; }

  Role role() const { return role_; }
  Phase phase() const { return phase_; }
  NodeId node() const { return node_; }
  const CompositeId& self() const { return self_; }
  const Certificate& own_certificate() const { return own_cert_; }
  const PublicKey& public_key() const { return keys_.public_key(); }
  const std::map<CompositeId, Certificate>& peers() const { return peers_; }
  const CertRepository& cert_repository() const { return cr_; }
  const FriendList& friends() const { return masks_.friends(); }

 private:
  Admission Admit(const Certificate& cert, Timestamp now);

  Role role_;
  Phase phase_ = Phase::kInit;
  NodeId node_;
  CompositeId self_;
  KeyPair keys_;
  Certificate own_cert_;
  FriendMasks masks_;
  SharedKeyRepository skr_;
  MasterGraph master_;
  CertRepository cr_;
  Drbg rng_;
  std::set<CompositeId> requested_;
  std::map<CompositeId, Certificate> peers_;
};

}  // namespace friendlink

#endif  // FRIENDLINK_PROTOCOL_SESSION_H_
