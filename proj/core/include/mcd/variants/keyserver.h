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


// Key-server variant: Diffie-Hellman tokens over keys fetched from a key
// server that answers for unenrolled identities with deterministic phantom
// keys.

#ifndef MCD_VARIANTS_KEYSERVER_H_
#define MCD_VARIANTS_KEYSERVER_H_

#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "mcd/authority/enrollment.h"
#include "mcd/client/member.h"
#include "mcd/crypto/group_suite.h"
#include "mcd/net/transport.h"

namespace mcd {

struct DhKeyPair {
  Scalar sk;
  SourcePoint pk;

  static DhKeyPair generate(const GroupSuite& dh, Rng& rng);
  static DhKeyPair from_secret(const GroupSuite& dh, const Scalar& sk);
};

// other_pk^sk. Throws Error(kMalformed) for the identity element or a point
// of another group.
SourcePoint dh_token(const GroupSuite& dh, const DhKeyPair& own, const SourcePoint& other_pk);

class KeyServer final : public LineHandler {
 public:
  static constexpr std::size_t kPhantomSecretBytes = 32;

  KeyServer(SuitePtr dh, Bytes phantom_secret, EnrollmentRegistry enrollment);

  // Throws Error(kUnauthorized) on a bad proof, Error(kMalformed) on an
  // invalid key.
  void enroll(const Identity& id, const SourcePoint& pk, ByteSpan proof);
  SourcePoint get_key(const Identity& id);

  // Everything the server records about lookups: identity -> fetch count.
  std::map<Identity, std::uint64_t> fetch_counts() const;
  bool enrolled(const Identity& id) const;

  // The phantom secret exponent of `id`; the knowledge a colluding key server
  // would share.
  Scalar phantom_scalar(const Identity& id) const;

  std::string handle(std::string_view line) override;

 private:
  SuitePtr dh_;
  Bytes phantom_secret_;
  EnrollmentRegistry enrollment_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Identity, SourcePoint> enrolled_;
  mutable std::mutex count_mu_;
  std::map<Identity, std::uint64_t> fetches_;
};

class KeyServerClient {
 public:
  KeyServerClient(Transport& transport, SuitePtr dh) : transport_(transport), dh_(std::move(dh)) {}
  SourcePoint get_key(const Identity& id);
  void enroll(const Identity& id, const SourcePoint& pk, ByteSpan proof);

 private:
  Transport& transport_;
  SuitePtr dh_;
};

// Member whose tokens are DH values over keys fetched from the key server.
// Tuple construction and hashing are identical to the pairing protocol.
class KeyServerMember final : public DiscoveryMember {
 public:
  // `points` must hash into the slot1 group of the DH group's base suite.
  KeyServerMember(Identity identity, ContactList contacts, DhKeyPair keys, SuitePtr dh,
                  Transport& key_server, std::shared_ptr<PointCache> points);

  Bytes token_bytes(const Identity& contact) override;
  std::size_t key_fetches() const { return fetches_; }

 protected:
  Bytes hide_key() const override;

 private:
  DhKeyPair keys_;
  SuitePtr dh_;
  KeyServerClient client_;
  std::unordered_map<Identity, Bytes> token_cache_;
  std::size_t fetches_ = 0;
};

}  // namespace mcd

#endif  // MCD_VARIANTS_KEYSERVER_H_
