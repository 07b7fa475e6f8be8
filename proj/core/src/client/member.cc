// Copyright 2026 The MCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcd/client/member.h"

#include <algorithm>

#include "mcd/crypto/hash.h"
#include "mcd/error.h"

namespace mcd {

bool token_order_less(const Identity& a, const Identity& b) {
  Bytes ea = a.encoding();
  Bytes eb = b.encoding();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

bool process_query_response(const AugmentedToken& expected_second,
                            const std::vector<TuplePair>& returned) {
  return std::any_of(returned.begin(), returned.end(),
                     [&](const TuplePair& t) { return t.second == expected_second; });
}

DiscoveryMember::DiscoveryMember(Identity identity, ContactList contacts,
                                 std::shared_ptr<PointCache> points)
    : identity_(std::move(identity)), contacts_(std::move(contacts)), points_(std::move(points)) {
  if (contacts_.contains(identity_)) {
    throw Error(Errc::kInvalidArgument, "a member cannot list itself as a contact");
  }
}

void DiscoveryMember::require_contact(const Identity& contact) const {
  if (contact == identity_) throw Error(Errc::kInvalidArgument, "self-contact");
  if (!contacts_.contains(contact)) {
    throw Error(Errc::kInvalidArgument, contact.value() + " is not in the contact list");
  }
}

TuplePair DiscoveryMember::visible_tuple(const Identity& contact, const Bytes& token) {
  SourcePoint q_self = points_->get(identity_, Slot::kSlot1);
  SourcePoint q_contact = points_->get(contact, Slot::kSlot1);
  return {ordered_h2(token, q_self, q_contact), ordered_h2(token, q_contact, q_contact)};
}

TuplePair DiscoveryMember::make_submission(const Identity& contact) {
  require_contact(contact);
  Bytes token = token_bytes(contact);
  TuplePair t = visible_tuple(contact, token);
  if (contacts_.is_hidden(contact)) {
    Bytes key = hide_key();
    t.second = AugmentedToken(hmac_sha256(key, {as_bytes("MCD-HIDE-v1"), contact.encoding()}));
    secure_zero(key);
  }
  return t;
}

QueryTuple DiscoveryMember::make_query(const Identity& contact) {
  require_contact(contact);
  Bytes token = token_bytes(contact);
  SourcePoint q_self = points_->get(identity_, Slot::kSlot1);
  return {visible_tuple(contact, token), ordered_h2(token, q_self, q_self)};
}

TuplePair DiscoveryMember::make_delete(const Identity& contact) { return make_submission(contact); }

AugmentedToken DiscoveryMember::derive_directory_access_token(const Identity& contact) {
  if (!discovered_.contains(contact)) {
    throw Error(Errc::kDenied, contact.value() + " has not been discovered");
  }
  return make_query(contact).expected_second;
}

AugmentedToken DiscoveryMember::directory_gate_for(const Identity& contact) {
  return make_submission(contact).second;
}

MemberState::MemberState(SystemParams params, Certificate cert, ContactList contacts,
                         std::shared_ptr<PointCache> points, bool verify)
    : DiscoveryMember(cert.identity, std::move(contacts),
                      points ? std::move(points) : std::make_shared<PointCache>(params.suite)),
      params_(std::move(params)),
      cert_(std::move(cert)) {
  if (DiscoveryMember::points()->suite() != params_.suite) {
    throw Error(Errc::kSuiteMismatch, "point cache belongs to another suite");
  }
  if (verify && !verify_certificate(params_, cert_)) {
    throw Error(Errc::kInvalidArgument, "certificate does not verify for " + cert_.identity.value());
  }
}

TargetElement MemberState::compute_token(const Identity& contact) {
  if (contact == identity()) throw Error(Errc::kInvalidArgument, "self-contact");
  if (auto it = token_cache_.find(contact); it != token_cache_.end()) return it->second;
  const GroupSuite& suite = *params_.suite;
  TargetElement t = token_order_less(identity(), contact)
                        ? suite.pair(cert_.c1, points()->get(contact, Slot::kSlot2))
                        : suite.pair(points()->get(contact, Slot::kSlot1), cert_.c2);
  token_cache_.emplace(contact, t);
  return t;
}

Bytes MemberState::hide_key() const {
  Digest d = sha256({as_bytes("MCD-HIDE-KEY-v1"), cert_.c1.encoding, cert_.c2.encoding});
  return Bytes(d.begin(), d.end());
}

}  // namespace mcd
