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

#include "mcd/variants/keyserver.h"

#include "mcd/crypto/hash.h"
#include "mcd/error.h"
#include "mcd/wire/messages.h"

namespace mcd {

DhKeyPair DhKeyPair::generate(const GroupSuite& dh, Rng& rng) {
  return from_secret(dh, dh.random_scalar(rng));
}

DhKeyPair DhKeyPair::from_secret(const GroupSuite& dh, const Scalar& sk) {
  if (sk.is_zero()) throw Error(Errc::kInvalidArgument, "secret key must be nonzero");
  return {sk, dh.mul(dh.generator(Slot::kSlot1), sk)};
}

SourcePoint dh_token(const GroupSuite& dh, const DhKeyPair& own, const SourcePoint& other_pk) {
  if (other_pk.suite != dh.id() || other_pk.slot != Slot::kSlot1) {
    throw Error(Errc::kMalformed, "public key from another group");
  }
  SourcePoint checked = dh.decode_point(Slot::kSlot1, other_pk.encoding);
  if (dh.is_identity(checked)) throw Error(Errc::kMalformed, "public key is the identity element");
  return dh.mul(checked, own.sk);
}

KeyServer::KeyServer(SuitePtr dh, Bytes phantom_secret, EnrollmentRegistry enrollment)
    : dh_(std::move(dh)),
      phantom_secret_(std::move(phantom_secret)),
      enrollment_(std::move(enrollment)) {
  if (phantom_secret_.size() != kPhantomSecretBytes) {
    throw Error(Errc::kInvalidArgument, "phantom secret must be 32 bytes");
  }
}

Scalar KeyServer::phantom_scalar(const Identity& id) const {
  Bytes wide;
  for (std::uint8_t block = 0; block < 2; ++block) {
    Digest d = hmac_sha256(phantom_secret_, {as_bytes("MCD-PHANTOM-v1"), id.encoding(),
                                             ByteSpan(&block, 1)});
    append(wide, d);
  }
  return dh_->scalar_from_wide(wide);
}

void KeyServer::enroll(const Identity& id, const SourcePoint& pk, ByteSpan proof) {
  if (!enrollment_.verify(id, EnrollmentRegistry::kKeyServerEnroll, proof)) {
    throw Error(Errc::kUnauthorized, "enrollment proof rejected");
  }
  SourcePoint checked = dh_->decode_point(Slot::kSlot1, pk.encoding);
  if (dh_->is_identity(checked)) throw Error(Errc::kMalformed, "public key is the identity element");
  std::unique_lock lock(mu_);
  enrolled_[id] = checked;
}

SourcePoint KeyServer::get_key(const Identity& id) {
  {
    std::lock_guard lock(count_mu_);
    ++fetches_[id];
  }
  // Both branches derive a point; the phantom is computed even for enrolled
  // identities so the two paths do the same work.
  SourcePoint phantom = dh_->mul(dh_->generator(Slot::kSlot1), phantom_scalar(id));
  std::shared_lock lock(mu_);
  auto it = enrolled_.find(id);
  return it != enrolled_.end() ? it->second : phantom;
}

std::map<Identity, std::uint64_t> KeyServer::fetch_counts() const {
  std::lock_guard lock(count_mu_);
  return fetches_;
}

bool KeyServer::enrolled(const Identity& id) const {
  std::shared_lock lock(mu_);
  return enrolled_.contains(id);
}

std::string KeyServer::handle(std::string_view line) {
  try {
    KeyRequest r = decode_key_request(line);
    Identity id = Identity::parse(r.id);
    if (r.op == KeyRequest::Op::kGetKey) return encode_key(get_key(id).encoding);
    enroll(id, dh_->decode_point(Slot::kSlot1, r.key), r.proof);
    return encode_ok();
  } catch (const Error& e) {
    if (e.code() == Errc::kUnauthorized) return encode_error(Errc::kUnauthorized);
    return encode_error(Errc::kMalformed);
  }
}

SourcePoint KeyServerClient::get_key(const Identity& id) {
  Bytes raw = decode_key(transport_.round_trip(encode_request(KeyRequest{KeyRequest::Op::kGetKey, id.value(), {}, {}})));
  return dh_->decode_point(Slot::kSlot1, raw);
}

void KeyServerClient::enroll(const Identity& id, const SourcePoint& pk, ByteSpan proof) {
  KeyRequest r{KeyRequest::Op::kEnroll, id.value(), pk.encoding, Bytes(proof.begin(), proof.end())};
  decode_ok(transport_.round_trip(encode_request(r)));
}

KeyServerMember::KeyServerMember(Identity identity, ContactList contacts, DhKeyPair keys,
                                 SuitePtr dh, Transport& key_server,
                                 std::shared_ptr<PointCache> points)
    : DiscoveryMember(std::move(identity), std::move(contacts), std::move(points)),
      keys_(std::move(keys)),
      dh_(std::move(dh)),
      client_(key_server, dh_) {}

Bytes KeyServerMember::token_bytes(const Identity& contact) {
  if (contact == identity()) throw Error(Errc::kInvalidArgument, "self-contact");
  if (auto it = token_cache_.find(contact); it != token_cache_.end()) return it->second;
  SourcePoint pk = client_.get_key(contact);
  ++fetches_;
  Bytes token = dh_token(*dh_, keys_, pk).encoding;
  token_cache_.emplace(contact, token);
  return token;
}

Bytes KeyServerMember::hide_key() const {
  Digest d = sha256({as_bytes("MCD-HIDE-KEY-v1"), keys_.sk.bytes()});
  return Bytes(d.begin(), d.end());
}

}  // namespace mcd
