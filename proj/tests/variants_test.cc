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


#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mcd/client/flows.h"
#include "mcd/directory/key_directory.h"
#include "mcd/error.h"
#include "mcd/net/transport.h"
#include "mcd/server/matching_server.h"
#include "mcd/variants/keyserver.h"
#include "mcd/variants/simple.h"
#include "mcd/wire/messages.h"
#include "test_support.h"

namespace mcd {
namespace {

using testing_support::fixed_registry;
using testing_support::id;
using testing_support::TransparentWorld;
using testing_support::universe;

std::uint64_t be_exponent(const Bytes& enc) {
  std::uint64_t v = 0;
  for (std::uint8_t b : enc) v = (v << 8) | b;
  return v;
}

MatchingServerOptions simple_options() {
  MatchingServerOptions o;
  o.variant = ServerVariant::kSimple;
  return o;
}

// ---------------------------------------------------------------- simple

TEST(SimpleVariant, TokenContract) {
  KdfParams p = KdfParams::test();
  EXPECT_EQ(simple_token(id("a"), id("b"), p), simple_token(id("a"), id("b"), p));
  EXPECT_NE(simple_token(id("a"), id("b"), p), simple_token(id("b"), id("a"), p));
  EXPECT_NE(simple_token(id("ab"), id("c"), p), simple_token(id("a"), id("bc"), p));
  EXPECT_EQ(simple_token(id("a"), id("b"), p).bits(),
            kdf(concat_unambiguous(as_bytes("a"), as_bytes("b")), p));
  EXPECT_THROW(simple_token(id("a"), id("a"), p), Error);
}

struct SimpleRun {
  MatchingServer server{simple_options()};
  InProcessTransport transport{server};
  MatchClient client{transport};
  KdfParams params = KdfParams::test();

  std::map<Identity, std::set<Identity>> run(
      const std::map<Identity, ContactList>& members) {
    for (const auto& [m, c] : members) simple_submit_all(m, c, client, params);
    server.advance_phase();
    std::map<Identity, std::set<Identity>> out;
    for (const auto& [m, c] : members) out[m] = simple_query_all(m, c, client, params).discovered;
    return out;
  }
};

TEST(SimpleVariant, DiscoveryFollowsMutualEdges) {
  Identity a = id("a"), b = id("b"), c = id("c"), ghost = id("ghost");
  SimpleRun r;
  auto out = r.run({{a, ContactList(a, {b, c, ghost}, {})},
                    {b, ContactList(b, {a}, {})},
                    {c, ContactList(c, {}, {})}});
  EXPECT_EQ(out[a], std::set<Identity>{b});
  EXPECT_EQ(out[b], std::set<Identity>{a});
  EXPECT_TRUE(out[c].empty());
}

TEST(SimpleVariant, RunWrapperAndHidden) {
  Identity a = id("a"), b = id("b");
  MatchingServer server{simple_options()};
  InProcessTransport t(server);
  MatchClient client(t);
  KdfParams p = KdfParams::test();
  ContactList ca(a, {}, {b});
  ContactList cb(b, {a}, {});
  simple_submit_all(a, ca, client, p);
  simple_submit_all(b, cb, client, p);
  server.advance_phase();
  EXPECT_EQ(simple_query_all(a, ca, client, p).discovered, std::set<Identity>{b});
  EXPECT_TRUE(simple_query_all(b, cb, client, p).discovered.empty());
}

TEST(SimpleVariant, ContactProbeRevealsEdges) {
  Identity a = id("a"), b = id("b"), c = id("c");
  SimpleRun r;
  r.run({{b, ContactList(b, {a}, {})}, {c, ContactList(c, {}, {})}});
  EXPECT_TRUE(attack_contact_probe(a, b, r.transport, r.params));
  EXPECT_FALSE(attack_contact_probe(a, c, r.transport, r.params));
  EXPECT_FALSE(attack_contact_probe(b, a, r.transport, r.params));
}

TEST(SimpleVariant, ProbeAgainstMainServerIsRefused) {
  MatchingServer main{MatchingServerOptions{}};
  main.advance_phase();
  InProcessTransport t(main);
  try {
    attack_contact_probe(id("a"), id("b"), t, KdfParams::test());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kMode);
  }
}

// ---------------------------------------------------------------- keyserver

struct KeyWorld {
  std::shared_ptr<const TransparentSuite> base;
  SuitePtr dh;
  KeyServer server;
  InProcessTransport transport{server};

  explicit KeyWorld(std::uint64_t q = 2305843009213693951ULL)
      : base(make(q)), dh(make_dh_group(base)), server(dh, Bytes(32, 0x11), fixed_registry()) {}

  static std::shared_ptr<const TransparentSuite> make(std::uint64_t q) {
    TransparentSuite::Options o;
    o.q = q;
    return make_transparent_suite(o);
  }

  Digest proof(const Identity& who) const {
    auto reg = fixed_registry();
    return EnrollmentRegistry::make_proof(reg.secret_for(who),
                                          EnrollmentRegistry::kKeyServerEnroll, who);
  }
};

TEST(KeyServer, TokenExponentArithmetic) {
  KeyWorld w(101);
  DhKeyPair a = DhKeyPair::from_secret(*w.dh, Scalar::from_u64(2));
  DhKeyPair b = DhKeyPair::from_secret(*w.dh, Scalar::from_u64(5));
  SourcePoint ab = dh_token(*w.dh, a, b.pk);
  EXPECT_EQ(be_exponent(ab.encoding), 10u);
  EXPECT_EQ(dh_token(*w.dh, b, a.pk), ab);
  EXPECT_THROW(dh_token(*w.dh, a, w.dh->identity(Slot::kSlot1)), Error);
  EXPECT_THROW(dh_token(*w.dh, a, w.base->generator(Slot::kSlot1)), Error);
  EXPECT_THROW(DhKeyPair::from_secret(*w.dh, Scalar()), Error);
}

TEST(KeyServer, EnrollmentStateMachine) {
  KeyWorld w;
  SeededRng rng(81);
  Identity alice = id("alice");
  DhKeyPair k = DhKeyPair::generate(*w.dh, rng);
  SourcePoint phantom = w.server.get_key(alice);
  EXPECT_EQ(phantom, w.dh->mul(w.dh->generator(Slot::kSlot1), w.server.phantom_scalar(alice)));
  EXPECT_NE(phantom, k.pk);
  EXPECT_FALSE(w.server.enrolled(alice));
  w.server.enroll(alice, k.pk, w.proof(alice));
  EXPECT_TRUE(w.server.enrolled(alice));
  EXPECT_EQ(w.server.get_key(alice), k.pk);
  EXPECT_EQ(w.server.fetch_counts().at(alice), 2u);
}

TEST(KeyServer, BadProofAndBadKey) {
  KeyWorld w;
  SeededRng rng(82);
  Identity alice = id("alice");
  DhKeyPair k = DhKeyPair::generate(*w.dh, rng);
  try {
    w.server.enroll(alice, k.pk, w.proof(id("bob")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnauthorized);
  }
  EXPECT_THROW(w.server.enroll(alice, w.dh->identity(Slot::kSlot1), w.proof(alice)), Error);
  KeyServerClient client(w.transport, w.dh);
  try {
    client.enroll(alice, k.pk, Bytes(32, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnauthorized);
  }
  EXPECT_FALSE(w.server.enrolled(alice));
}

TEST(KeyServer, PhantomKeysConsistentAndDistinct) {
  KeyWorld w;
  std::set<Bytes> keys;
  for (const auto& who : universe(100, "ghost-")) {
    SourcePoint k1 = w.server.get_key(who);
    EXPECT_EQ(w.server.get_key(who), k1);
    EXPECT_FALSE(w.dh->is_identity(k1));
    EXPECT_NO_THROW(w.dh->decode_point(Slot::kSlot1, k1.encoding));
    keys.insert(k1.encoding);
  }
  EXPECT_EQ(keys.size(), 100u);
  KeyServer other(w.dh, Bytes(32, 0x22), fixed_registry());
  EXPECT_NE(other.get_key(id("ghost-1")), w.server.get_key(id("ghost-1")));
}

TEST(KeyServer, PhantomKeysOnProductionGroup) {
  auto dh = make_dh_group(production_suite());
  KeyServer server(dh, Bytes(32, 0x33), fixed_registry());
  std::set<Bytes> keys;
  for (const auto& who : universe(20, "ghost-")) {
    SourcePoint k = server.get_key(who);
    EXPECT_EQ(server.get_key(who), k);
    EXPECT_NO_THROW(dh->decode_point(Slot::kSlot1, k.encoding));
    keys.insert(k.encoding);
  }
  EXPECT_EQ(keys.size(), 20u);
}

TEST(KeyServer, ResponseShapeIdenticalForEnrolledAndPhantom) {
  auto dh = make_dh_group(production_suite());
  KeyServer server(dh, Bytes(32, 0x44), fixed_registry());
  SeededRng rng(83);
  Identity alice = id("alice");
  DhKeyPair k = DhKeyPair::generate(*dh, rng);
  auto reg = fixed_registry();
  server.enroll(alice, k.pk,
                EnrollmentRegistry::make_proof(reg.secret_for(alice),
                                               EnrollmentRegistry::kKeyServerEnroll, alice));
  std::string enrolled = server.handle(R"({"op":"getkey","id":"alice"})");
  std::string phantom = server.handle(R"({"op":"getkey","id":"ghost"})");
  EXPECT_EQ(enrolled.size(), phantom.size());
  EXPECT_EQ(enrolled.substr(0, 8), phantom.substr(0, 8));
  EXPECT_EQ(enrolled, encode_key(k.pk.encoding));
  EXPECT_EQ(server.handle("garbage"), R"({"err":"malformed"})");
}

TEST(KeyServer, MemberTokensSymmetricOverUniverse) {
  KeyWorld w;
  auto points = std::make_shared<PointCache>(w.base);
  auto ids = universe(30);
  SeededRng rng(84);
  std::map<Identity, std::unique_ptr<KeyServerMember>> members;
  for (const auto& who : ids) {
    DhKeyPair k = DhKeyPair::generate(*w.dh, rng);
    w.server.enroll(who, k.pk, w.proof(who));
    std::set<Identity> others(ids.begin(), ids.end());
    others.erase(who);
    members[who] = std::make_unique<KeyServerMember>(who, ContactList(who, others, {}), k, w.dh,
                                                     w.transport, points);
  }
  for (const auto& a : ids) {
    for (const auto& b : ids) {
      if (a == b) continue;
      ASSERT_EQ(members[a]->token_bytes(b), members[b]->token_bytes(a));
    }
  }
  EXPECT_EQ(members[ids[0]]->key_fetches(), 29u);
  members[ids[0]]->token_bytes(ids[1]);
  EXPECT_EQ(members[ids[0]]->key_fetches(), 29u);
}

TEST(KeyServer, MatchesMainProtocolOutputs) {
  // Same contact lists, two protocols.
  std::vector<Identity> ids = universe(8);
  std::map<Identity, std::set<Identity>> contacts = {
      {ids[0], {ids[1], ids[2], ids[7]}}, {ids[1], {ids[0], ids[3]}},
      {ids[2], {ids[0], ids[3]}},         {ids[3], {ids[2], ids[1], ids[4]}},
      {ids[4], {}},                       {ids[5], {ids[6]}},
      {ids[6], {ids[5], ids[0]}}};
  std::set<Identity> hidden_by_5 = {ids[6]};

  auto run = [&](auto make_member) {
    MatchingServer server{MatchingServerOptions{}};
    InProcessTransport t(server);
    MatchClient client(t);
    std::map<Identity, std::unique_ptr<DiscoveryMember>> members;
    for (const auto& [who, cs] : contacts) {
      std::set<Identity> vis = cs, hid;
      if (who == ids[5]) {
        vis.clear();
        hid = hidden_by_5;
      }
      members[who] = make_member(who, ContactList(who, vis, hid));
    }
    for (auto& [who, m] : members) submit_all(*m, client);
    server.advance_phase();
    std::map<Identity, std::set<Identity>> out;
    for (auto& [who, m] : members) out[who] = query_all(*m, client).discovered;
    return out;
  };

  TransparentWorld tw;
  auto main_out = run([&](const Identity& who, ContactList cl) -> std::unique_ptr<DiscoveryMember> {
    return std::make_unique<MemberState>(tw.params(), tw.cert(who), std::move(cl), tw.points());
  });

  KeyWorld kw;
  auto points = std::make_shared<PointCache>(kw.base);
  SeededRng rng(85);
  auto ks_out = run([&](const Identity& who, ContactList cl) -> std::unique_ptr<DiscoveryMember> {
    DhKeyPair k = DhKeyPair::generate(*kw.dh, rng);
    kw.server.enroll(who, k.pk, kw.proof(who));
    return std::make_unique<KeyServerMember>(who, std::move(cl), k, kw.dh, kw.transport, points);
  });

  EXPECT_EQ(main_out, ks_out);
  EXPECT_EQ(main_out[ids[0]], (std::set<Identity>{ids[1], ids[2]}));
  EXPECT_EQ(main_out[ids[5]], (std::set<Identity>{ids[6]}));
  EXPECT_TRUE(main_out[ids[6]].empty() || !main_out[ids[6]].contains(ids[5]));
}

TEST(KeyServer, UnenrolledContactLooksLikeNonMutual) {
  KeyWorld w;
  auto points = std::make_shared<PointCache>(w.base);
  SeededRng rng(86);
  Identity m = id("m"), ghost = id("ghost-1"), stranger = id("known-1");
  DhKeyPair km = DhKeyPair::generate(*w.dh, rng);
  DhKeyPair ks = DhKeyPair::generate(*w.dh, rng);
  w.server.enroll(m, km.pk, w.proof(m));
  w.server.enroll(stranger, ks.pk, w.proof(stranger));

  auto transcript_for = [&](const Identity& contact) {
    Transcript tr;
    RecordingTransport keys(w.transport, tr);
    KeyServerMember member(m, ContactList(m, {contact}, {}), km, w.dh, keys, points);
    MatchingServer server{MatchingServerOptions{}};
    InProcessTransport inner(server);
    RecordingTransport match(inner, tr);
    DiscoveryOutput out = run_static(member, match, [&] { server.advance_phase(); });
    EXPECT_TRUE(out.discovered.empty());
    return tr.entries();
  };
  auto a = transcript_for(ghost);
  auto b = transcript_for(stranger);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].request.size(), b[i].request.size());
    EXPECT_EQ(a[i].response.size(), b[i].response.size());
    EXPECT_EQ(peek_op(a[i].request), peek_op(b[i].request));
  }
  EXPECT_EQ(a.back().response, R"({"matches":[]})");
  EXPECT_EQ(b.back().response, R"({"matches":[]})");
}

TEST(KeyServer, EmptyContactListFetchesNothing) {
  KeyWorld w;
  auto points = std::make_shared<PointCache>(w.base);
  SeededRng rng(87);
  Identity m = id("m");
  KeyServerMember member(m, ContactList(m, {}, {}), DhKeyPair::generate(*w.dh, rng), w.dh,
                         w.transport, points);
  MatchingServer server{MatchingServerOptions{}};
  InProcessTransport t(server);
  run_static(member, t, [&] { server.advance_phase(); });
  EXPECT_EQ(member.key_fetches(), 0u);
  EXPECT_TRUE(w.server.fetch_counts().empty());
}

// ---------------------------------------------------------------- directory

Digest dir_proof(const Identity& who) {
  auto reg = fixed_registry();
  return EnrollmentRegistry::make_proof(reg.secret_for(who), EnrollmentRegistry::kDirectoryPut,
                                        who);
}

TEST(KeyDirectory, GateContract) {
  KeyDirectory dir(fixed_registry());
  Identity owner = id("owner");
  SeededRng rng(91);
  AugmentedToken g1 = AugmentedToken::random(rng);
  AugmentedToken g2 = AugmentedToken::random(rng);
  dir.put(owner, Bytes{1, 2, 3}, {g1}, dir_proof(owner));
  EXPECT_EQ(dir.get(owner, g1), (Bytes{1, 2, 3}));
  EXPECT_FALSE(dir.get(owner, g2).has_value());
  dir.put(owner, Bytes{1, 2, 3}, {g2}, dir_proof(owner));
  EXPECT_TRUE(dir.get(owner, g1).has_value());
  EXPECT_TRUE(dir.get(owner, g2).has_value());
  dir.put(owner, Bytes{1, 2, 3}, {}, dir_proof(owner));
  EXPECT_TRUE(dir.get(owner, g1).has_value());
  try {
    dir.put(owner, Bytes{9}, {g1}, dir_proof(id("other")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnauthorized);
  }
  EXPECT_EQ(dir.get(owner, g1), (Bytes{1, 2, 3}));
}

TEST(KeyDirectory, RandomTokensDenied) {
  KeyDirectory dir(fixed_registry());
  Identity owner = id("owner");
  SeededRng rng(92);
  dir.put(owner, Bytes{7}, {AugmentedToken::random(rng)}, dir_proof(owner));
  for (int i = 0; i < 10000; ++i) {
    ASSERT_FALSE(dir.get(owner, AugmentedToken::random(rng)).has_value());
  }
}

TEST(KeyDirectory, UniformDenial) {
  KeyDirectory dir(fixed_registry());
  Identity owner = id("owner");
  SeededRng rng(93);
  AugmentedToken g = AugmentedToken::random(rng);
  dir.put(owner, Bytes{7}, {g}, dir_proof(owner));
  AugmentedToken bad = AugmentedToken::random(rng);
  DirRequest wrong_token{DirRequest::Op::kGet, "owner", {}, {}, {}, bad};
  DirRequest unknown_target{DirRequest::Op::kGet, "nobody", {}, {}, {}, bad};
  std::string r1 = dir.handle(encode_request(wrong_token));
  std::string r2 = dir.handle(encode_request(unknown_target));
  EXPECT_EQ(r1, r2);
  EXPECT_EQ(r1, R"({"err":"denied"})");
  DirRequest good{DirRequest::Op::kGet, "owner", {}, {}, {}, g};
  EXPECT_EQ(dir.handle(encode_request(good)), R"({"key":"07"})");
}

TEST(KeyDirectory, EndToEndWithMatchingServer) {
  TransparentWorld w;
  Identity a = id("a"), b = id("b"), c = id("c");
  auto ma = w.member(a, {b});
  auto mb = w.member(b, {a});
  auto mc = w.member(c, {a});
  MatchingServer server{MatchingServerOptions{}};
  InProcessTransport t(server);
  MatchClient client(t);
  for (DiscoveryMember* m : {static_cast<DiscoveryMember*>(ma.get()), static_cast<DiscoveryMember*>(mb.get()),
                             static_cast<DiscoveryMember*>(mc.get())}) {
    submit_all(*m, client);
  }
  server.advance_phase();
  query_all(*ma, client);
  query_all(*mb, client);
  query_all(*mc, client);

  KeyDirectory dir(fixed_registry());
  InProcessTransport dt(dir);
  DirectoryClient dc(dt);
  dc.put(a, Bytes{0xa}, {ma->directory_gate_for(b)}, dir_proof(a));
  dc.put(b, Bytes{0xb}, {mb->directory_gate_for(a)}, dir_proof(b));
  EXPECT_EQ(dc.get(b, ma->derive_directory_access_token(b)), Bytes{0xb});
  EXPECT_EQ(dc.get(a, mb->derive_directory_access_token(a)), Bytes{0xa});
  EXPECT_THROW(mc->derive_directory_access_token(a), Error);
  // c is not mutual with a: the only value c could try is its own query's
  // expected second, which a never registered.
  EXPECT_FALSE(dc.get(a, mc->make_query(a).expected_second).has_value());
  SeededRng rng(94);
  EXPECT_FALSE(dc.get(a, AugmentedToken::random(rng)).has_value());
}

}  // namespace
}  // namespace mcd
