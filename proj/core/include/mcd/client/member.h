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


// Member-side tuple construction shared by the pairing protocol and the
// key-server variant. They differ only in where the shared token comes from.

#ifndef MCD_CLIENT_MEMBER_H_
#define MCD_CLIENT_MEMBER_H_

#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "mcd/authority/authority.h"
#include "mcd/client/contact_list.h"
#include "mcd/client/point_cache.h"
#include "mcd/crypto/augmented_token.h"
#include "mcd/wire/messages.h"

namespace mcd {

struct QueryTuple {
  TuplePair tuple;
  AugmentedToken expected_second;
};

struct DiscoveryOutput {
  std::set<Identity> discovered;
  bool incomplete = false;
};

class DiscoveryMember {
 public:
  DiscoveryMember(Identity identity, ContactList contacts, std::shared_ptr<PointCache> points);
  virtual ~DiscoveryMember() = default;

  const Identity& identity() const { return identity_; }
  const ContactList& contacts() const { return contacts_; }

  // Serialized shared token with `contact`. Throws Error(kInvalidArgument)
  // for the member itself.
  virtual Bytes token_bytes(const Identity& contact) = 0;

  // Visible contact: (H2<(T, Q1(M), Q1(A)), H2<(T, Q1(A), Q1(A))). Hidden
  // contact: same first component, pseudorandom second.
  TuplePair make_submission(const Identity& contact);
  // Visible-form tuple plus the second component a mutual partner stores.
  QueryTuple make_query(const Identity& contact);
  // The tuple this member stores for `contact` (what a delete must name).
  TuplePair make_delete(const Identity& contact);

  void record_discovery(const Identity& contact) { discovered_.insert(contact); }
  const std::set<Identity>& discovered() const { return discovered_; }
  // The value a discovered partner registered as this member's directory
  // gate. Throws Error(kDenied) when `contact` has not been discovered.
  AugmentedToken derive_directory_access_token(const Identity& contact);
  // The gate this member registers for `contact`.
  AugmentedToken directory_gate_for(const Identity& contact);

 protected:
  void require_contact(const Identity& contact) const;
  // Key for the pseudorandom second components of hidden contacts.
  virtual Bytes hide_key() const = 0;
  const std::shared_ptr<PointCache>& points() const { return points_; }

 private:
  TuplePair visible_tuple(const Identity& contact, const Bytes& token);

  Identity identity_;
  ContactList contacts_;
  std::shared_ptr<PointCache> points_;
  std::set<Identity> discovered_;
};

// Pairing-protocol member holding a certificate.
class MemberState final : public DiscoveryMember {
 public:
  // Throws Error(kInvalidArgument) when `verify` is set and the certificate
  // does not verify for `cert.identity`.
  MemberState(SystemParams params, Certificate cert, ContactList contacts,
              std::shared_ptr<PointCache> points = nullptr, bool verify = true);

  const SystemParams& params() const { return params_; }
  const Certificate& certificate() const { return cert_; }

  // e(Q1(min), Q2(max))^s with min/max by identity encoding; cached.
  TargetElement compute_token(const Identity& contact);
  Bytes token_bytes(const Identity& contact) override { return compute_token(contact).encoding; }
  std::size_t cached_tokens() const { return token_cache_.size(); }

 protected:
  Bytes hide_key() const override;

 private:
  SystemParams params_;
  Certificate cert_;
  std::unordered_map<Identity, TargetElement> token_cache_;
};

// True iff some returned tuple carries the expected second component.
bool process_query_response(const AugmentedToken& expected_second,
                            const std::vector<TuplePair>& returned);

// Identity order used to orient pairing tokens (canonical encodings).
bool token_order_less(const Identity& a, const Identity& b);

}  // namespace mcd

#endif  // MCD_CLIENT_MEMBER_H_
