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

#include "friendlink/protocol/session.h"

#include "absl/strings/str_cat.h"
#include "friendlink/crypto/symmetric.h"
#include "friendlink/status_macros.h"

namespace friendlink {

std::string_view RoleName(Role role) {
  return role == Role::kInitiator ? "initiator" : "target";
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kInit:
      return "init";
    case Phase::kDiscovering:
      return "discovering";
    case Phase::kConnected:
      return "connected";
    case Phase::kClosed:
      return "closed";
  }
  return "unknown";
}

std::string_view SetupVerdictName(SetupVerdict verdict) {
  switch (verdict) {
    case SetupVerdict::kAccept:
      return "accept";
    case SetupVerdict::kIgnore:
      return "ignore";
    case SetupVerdict::kReject:
      return "reject";
  }
  return "unknown";
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNotAddressed:
      return "not_addressed";
    case RejectReason::kUnknownInitiator:
      return "unknown_initiator";
    case RejectReason::kCertInvalid:
      return "cert_invalid";
    case RejectReason::kDecryptFailed:
      return "decrypt_failed";
  }
  return "unknown";
}

std::optional<CompositeId> FriendMasks::Match(const BitArray& mask) {
  auto& table = by_length_[mask.size()];
  if (table.size() != friends_.size()) {
    table.clear();
    for (const FriendList::Entry& e : friends_) {
      table.emplace_back(IdMask(e.composite, mask.size()).bytes(), e.composite);
    }
  }
  for (const auto& [bytes, composite] : table) {
    if (bytes == mask.bytes()) return composite;
  }
  return std::nullopt;
}

std::optional<CompositeId> IdentifyInitiator(FriendMasks& masks, const SetupRequest& req) {
  absl::StatusOr<BitArray> mask = req.bf_c.bits().Xor(req.bf_c_plus);
  if (!mask.ok()) return std::nullopt;
  return masks.Match(*mask);
}

Session::Session(SessionInit init, KeyPair keys, Certificate own_cert)
    : role_(init.role),
      node_(init.node),
      self_(init.self),
      keys_(std::move(keys)),
      own_cert_(std::move(own_cert)),
      masks_(std::move(init.friends)),
      skr_(std::move(init.skr)),
      master_(std::move(init.master)),
      rng_(Drbg::FromSeed(init.rng_seed)) {}

Admission Session::Admit(const Certificate& cert, Timestamp now) {
  // The issuer of a self-signed certificate is whichever node announced
  // that key during initialization.
  std::optional<NodeId> issuer = skr_.FindNodeByKey(cert.public_key);
  if (!issuer.has_value()) {
    switch (VerifyCertificate(cert, now)) {
      case CertStatus::kBadSignature:
        return Admission::kBadSignature;
      case CertStatus::kExpired:
        return Admission::kExpired;
      case CertStatus::kValid:
        break;
    }
    return Admission::kUntrustedIssuer;
  }
  Admission verdict = AdmitCertificate(cr_, cert, master_, *issuer, node_, now);
  if (verdict == Admission::kAccepted && peers_.contains(cert.subject)) {
    peers_[cert.subject] = cert;
  }
  return verdict;
}

absl::StatusOr<SetupRequest> Session::BuildSetupRequest(std::span<const CompositeId> targets,
                                                        const BloomParams& params,
                                                        Timestamp now) {
  if (role_ != Role::kInitiator) return absl::FailedPreconditionError("not an initiator");
  if (phase_ != Phase::kInit) {
    return absl::FailedPreconditionError(
        absl::StrCat("discovery requires phase init, session is ", std::string(PhaseName(phase_))));
  }
  if (targets.empty()) return absl::InvalidArgumentError("empty target list");
  if (VerifyCertificate(own_cert_, now) != CertStatus::kValid) {
    return absl::FailedPreconditionError("own certificate is not valid now");
  }

  BloomFilter bf_c(params);
  for (const CompositeId& t : targets) bf_c.InsertInPlace(t.bytes());
  FL_ASSIGN_OR_RETURN(BloomFilter masked, bf_c.XorMask(IdMask(self_, params.m_bits)));
  Bytes cf = SymEncrypt(SymKeyOf(self_), own_cert_.Serialize());

  requested_.insert(targets.begin(), targets.end());
  phase_ = Phase::kDiscovering;
  return SetupRequest{std::move(bf_c), masked.bits(), std::move(cf)};
}

SetupOutcome Session::ProcessSetupRequest(const SetupRequest& req, Timestamp now) {
  auto reject = [](RejectReason r) {
    SetupOutcome out;
    out.verdict = SetupVerdict::kReject;
    out.reason = r;
    return out;
  };
  if (role_ != Role::kTarget || phase_ == Phase::kClosed) {
    return reject(RejectReason::kNotAddressed);
  }
  // Step 1: is this node among the addressed targets?
  if (!req.bf_c.Contains(self_.bytes())) return SetupOutcome{};

  // Steps 2-3: unmask and look for the initiator in the friend list.
  std::optional<CompositeId> initiator = IdentifyInitiator(masks_, req);
  if (!initiator.has_value()) return reject(RejectReason::kUnknownInitiator);

  // Step 4: decrypt the initiator's certificate.
  absl::StatusOr<Bytes> cert_wire = SymDecrypt(SymKeyOf(*initiator), req.cf);
  if (!cert_wire.ok()) return reject(RejectReason::kDecryptFailed);
  absl::StatusOr<Certificate> cert = Certificate::Parse(*cert_wire);
  if (!cert.ok() || cert->subject != *initiator) return reject(RejectReason::kCertInvalid);

  // Step 5: the certificate must verify now and come from a trusted node.
  if (Admit(*cert, now) != Admission::kAccepted) return reject(RejectReason::kCertInvalid);
  peers_[*initiator] = *cert;

  // Step 6: answer with our certificate under the initiator's key.
  phase_ = Phase::kConnected;
  SetupOutcome accepted;
  accepted.verdict = SetupVerdict::kAccept;
  accepted.reply = SetupReply{SymEncrypt(SymKeyOf(*initiator), own_cert_.Serialize())};
  accepted.initiator = initiator;
  return accepted;
}

absl::StatusOr<InitializationResult> Session::CompleteInitialization(
    std::span<const SetupReply> replies, Timestamp now) {
  if (role_ != Role::kInitiator || phase_ != Phase::kDiscovering) {
    return absl::FailedPreconditionError("no discovery in progress");
  }
  InitializationResult result;
  const SymmetricKey key = SymKeyOf(self_);
  for (const SetupReply& reply : replies) {
    absl::StatusOr<Bytes> wire = SymDecrypt(key, reply.encrypted_cert);
    if (!wire.ok()) {
      result.dropped.push_back("decrypt_failed");
      continue;
    }
    absl::StatusOr<Certificate> cert = Certificate::Parse(*wire);
    if (!cert.ok()) {
      result.dropped.push_back("malformed_certificate");
      continue;
    }
    if (!requested_.contains(cert->subject)) {
      result.dropped.push_back("not_requested");
      continue;
    }
    if (Admission a = Admit(*cert, now); a != Admission::kAccepted) {
      result.dropped.push_back(std::string(AdmissionName(a)));
      continue;
    }
    peers_[cert->subject] = *cert;
  }
  for (const auto& [subject, cert] : peers_) result.update.certs.push_back(cert);
  if (!peers_.empty()) result.update.certs.push_back(own_cert_);
  phase_ = Phase::kConnected;
  return result;
}

absl::StatusOr<DataMessage> Session::SendMessage(const CompositeId& recipient,
                                                 ByteSpan plaintext) {
  if (phase_ != Phase::kConnected) return absl::FailedPreconditionError("session not connected");
  if (plaintext.size() > kMaxMessageBytes) {
    return absl::InvalidArgumentError(
        absl::StrCat("message of ", plaintext.size(), " bytes exceeds ", kMaxMessageBytes));
  }
  auto it = peers_.find(recipient);
  if (it == peers_.end()) return absl::NotFoundError("recipient is not a connected peer");
  SymmetricKey key = SymmetricKey::Random(rng_);
  return DataMessage{WrapKey(it->second.public_key, key), SymEncrypt(key, plaintext)};
}

absl::StatusOr<ReceivedMessage> Session::ReceiveMessage(const DataMessage& msg,
                                                        const CompositeId* reply_to) {
  if (phase_ != Phase::kConnected) return absl::FailedPreconditionError("session not connected");
  FL_ASSIGN_OR_RETURN(SymmetricKey key, keys_.UnwrapKey(msg.wrapped_key));
  ReceivedMessage out;
  FL_ASSIGN_OR_RETURN(out.plaintext, SymDecrypt(key, msg.body));
  if (reply_to != nullptr) {
    FL_ASSIGN_OR_RETURN(out.ack, SendMessage(*reply_to, AsBytes("ack")));
  }
  return out;
}

absl::StatusOr<std::vector<Admission>> Session::ApplyCertUpdate(const CertUpdate& update,
                                                                Timestamp now) {
  if (phase_ != Phase::kConnected) return absl::FailedPreconditionError("session not connected");
  std::vector<Admission> verdicts;
  for (const Certificate& cert : update.certs) {
    if (cert.subject == self_) {
      verdicts.push_back(Admission::kAccepted);
      continue;
    }
    Admission a = Admit(cert, now);
    if (a == Admission::kAccepted) peers_[cert.subject] = cert;
    verdicts.push_back(a);
  }
  return verdicts;
}

}  // namespace friendlink
