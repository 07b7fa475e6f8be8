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

#include "mcd/authority/authority.h"
#include "mcd/authority/enrollment.h"
#include "mcd/error.h"
#include "test_support.h"

namespace mcd {
namespace {

using testing_support::id;
using testing_support::issue_proof;
using testing_support::TransparentWorld;
using testing_support::universe;

Bytes seed_bytes(std::uint8_t fill) { return Bytes(32, fill); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kBrokenSuite;
}

TEST(Setup, SeededTestProfileIsDeterministic) {
  Authority a = Authority::setup(SecurityProfile::kTest, seed_bytes(1));
  Authority b = Authority::setup(SecurityProfile::kTest, seed_bytes(1));
  EXPECT_EQ(a.params().to_json().dump(), b.params().to_json().dump());
  EXPECT_EQ(a.enrollment().key(), b.enrollment().key());
  Authority c = Authority::setup(SecurityProfile::kTest, seed_bytes(2));
  EXPECT_NE(a.params().to_json().dump(), c.params().to_json().dump());
  EXPECT_TRUE(a.params().consistent());
}

TEST(Setup, ProductionProfileRefusesSeed) {
  EXPECT_EQ(code_of([] { Authority::setup(SecurityProfile::kProduction, seed_bytes(1)); }),
            Errc::kPolicy);
  EXPECT_EQ(code_of([] { Authority::setup(SecurityProfile::kTest, Bytes(31, 0)); }),
            Errc::kInvalidArgument);
  Authority a = Authority::setup(SecurityProfile::kProduction, std::nullopt);
  Authority b = Authority::setup(SecurityProfile::kProduction, std::nullopt);
  EXPECT_TRUE(a.params().consistent());
  EXPECT_NE(a.params().p_pub1, b.params().p_pub1);
}

TEST(Setup, ParamsShape) {
  Authority a = Authority::setup(SecurityProfile::kTest, seed_bytes(3));
  auto j = a.params().to_json();
  EXPECT_EQ(j.at("suite_id"), "production_pairing");
  EXPECT_EQ(j.at("n"), 256);
  EXPECT_EQ(j.at("version"), "MCD-v1");
  SystemParams back = SystemParams::from_json(j);
  EXPECT_EQ(back.p_pub1, a.params().p_pub1);
  EXPECT_EQ(back.p_pub2, a.params().p_pub2);
  EXPECT_EQ(back.p1, a.params().p1);
  EXPECT_TRUE(back.consistent());
  auto broken = j;
  broken["p_pub1"] = std::string(96, '0');
  EXPECT_THROW(SystemParams::from_json(broken), Error);
}

TEST(Setup, ProfileNames) {
  EXPECT_EQ(parse_profile(profile_name(SecurityProfile::kTest)), SecurityProfile::kTest);
  EXPECT_EQ(parse_profile(profile_name(SecurityProfile::kProduction)),
            SecurityProfile::kProduction);
  EXPECT_FALSE(parse_profile("staging").has_value());
}

TEST(Setup, TransparentPublicKeyExponent) {
  TransparentSuite::Options o;
  o.q = 101;
  o.generator1 = 5;
  o.generator2 = 9;
  TransparentWorld w(3, o);
  EXPECT_EQ(w.suite()->exponent(w.params().p_pub1), 15u);
  EXPECT_EQ(w.suite()->exponent(w.params().p_pub2), 27u);
  EXPECT_TRUE(w.params().consistent());
}

TEST(Issue, CertificateVerifies) {
  Authority a = Authority::setup(SecurityProfile::kTest, seed_bytes(4));
  Identity alice = id("alice");
  Certificate c = a.issue_certificate(alice, issue_proof(a.enrollment(), alice));
  EXPECT_TRUE(verify_certificate(a.params(), c));
  Certificate back = Certificate::from_json(c.to_json(), *a.params().suite);
  EXPECT_EQ(back.c1, c.c1);
  EXPECT_EQ(back.c2, c.c2);
  EXPECT_EQ(back.identity, alice);
}

TEST(Issue, TransparentCertificateExponent) {
  TransparentSuite::Options o;
  o.q = 101;
  o.pinned["bob"] = {7, 11};
  TransparentWorld w(3, o);
  Certificate c = w.cert(id("bob"));
  EXPECT_EQ(w.suite()->exponent(c.c1), 21u);
  EXPECT_EQ(w.suite()->exponent(c.c2), 33u);
  EXPECT_TRUE(verify_certificate(w.params(), c));
}

TEST(Issue, BadProofIsUnauthorized) {
  TransparentWorld w;
  Identity alice = id("alice");
  Identity mallory = id("mallory");
  auto reg = testing_support::fixed_registry();
  EXPECT_EQ(code_of([&] { w.authority().issue_certificate(alice, issue_proof(reg, mallory)); }),
            Errc::kUnauthorized);
  EXPECT_EQ(code_of([&] { w.authority().issue_certificate(alice, Bytes(32, 0)); }),
            Errc::kUnauthorized);
  Digest wrong_purpose = EnrollmentRegistry::make_proof(
      reg.secret_for(alice), EnrollmentRegistry::kDirectoryPut, alice);
  EXPECT_EQ(code_of([&] { w.authority().issue_certificate(alice, wrong_purpose); }),
            Errc::kUnauthorized);
}

TEST(Verify, ReplacedComponentFails) {
  TransparentWorld w;
  Certificate c = w.cert(id("alice"));
  SeededRng rng(5);
  Certificate bad1 = c;
  bad1.c1 = w.suite()->point(Slot::kSlot1, rng.next_u64());
  EXPECT_FALSE(verify_certificate(w.params(), bad1));
  Certificate bad2 = c;
  bad2.c2 = w.suite()->point(Slot::kSlot2, rng.next_u64());
  EXPECT_FALSE(verify_certificate(w.params(), bad2));
  Certificate zero = c;
  zero.c1 = w.suite()->identity(Slot::kSlot1);
  zero.c2 = w.suite()->identity(Slot::kSlot2);
  EXPECT_FALSE(verify_certificate(w.params(), zero));
}

TEST(Verify, ProductionReplacedComponentFails) {
  Authority a = Authority::setup(SecurityProfile::kTest, seed_bytes(6));
  Identity alice = id("alice");
  Certificate c = a.issue_certificate(alice, issue_proof(a.enrollment(), alice));
  Certificate bad = c;
  SeededRng rng(6);
  bad.c1 = a.params().suite->mul(a.params().p1, a.params().suite->random_scalar(rng));
  EXPECT_FALSE(verify_certificate(a.params(), bad));
  Certificate moved = c;
  moved.identity = id("bob");
  EXPECT_FALSE(verify_certificate(a.params(), moved));
}

TEST(Verify, ExhaustiveIdentityMismatch) {
  TransparentWorld w;
  auto ids = universe(30);
  std::vector<Certificate> certs;
  for (const auto& who : ids) certs.push_back(w.cert(who));
  for (std::size_t x = 0; x < ids.size(); ++x) {
    for (std::size_t y = 0; y < ids.size(); ++y) {
      Certificate presented = certs[x];
      presented.identity = ids[y];
      EXPECT_EQ(verify_certificate(w.params(), presented), x == y) << x << " as " << y;
    }
  }
}

TEST(Erase, ClosesIssuanceAndZeroizes) {
  TransparentWorld w;
  Certificate before = w.cert(id("alice"));
  EXPECT_TRUE(w.authority().master().live());
  EXPECT_FALSE(MasterSecretInspector::scalar(w.authority().master()).is_zero());
  w.authority().erase_master();
  EXPECT_FALSE(w.authority().master().live());
  EXPECT_TRUE(MasterSecretInspector::scalar(w.authority().master()).is_zero());
  EXPECT_EQ(code_of([&] { w.cert(id("bob")); }), Errc::kIssuanceClosed);
  EXPECT_NO_THROW(w.authority().erase_master());
  EXPECT_EQ(code_of([&] { w.cert(id("bob")); }), Errc::kIssuanceClosed);
  EXPECT_TRUE(verify_certificate(w.params(), before));
}

TEST(StateFile, RoundTrip) {
  Authority a = Authority::setup(SecurityProfile::kTest, seed_bytes(7));
  auto j = a.state_json();
  EXPECT_TRUE(j.at("live").get<bool>());
  Authority b = Authority::from_state_json(j);
  Identity alice = id("alice");
  Certificate ca = a.issue_certificate(alice, issue_proof(a.enrollment(), alice));
  Certificate cb = b.issue_certificate(alice, issue_proof(b.enrollment(), alice));
  EXPECT_EQ(ca.c1, cb.c1);
  EXPECT_EQ(ca.c2, cb.c2);

  auto tampered = j;
  tampered["s"] = std::string(63, '0') + "5";
  EXPECT_THROW(Authority::from_state_json(tampered), Error);

  a.erase_master();
  auto erased = a.state_json();
  EXPECT_FALSE(erased.contains("s"));
  Authority c = Authority::from_state_json(erased);
  EXPECT_FALSE(c.master().live());
  EXPECT_EQ(code_of([&] { c.issue_certificate(alice, issue_proof(c.enrollment(), alice)); }),
            Errc::kIssuanceClosed);
}

TEST(Enrollment, ProofsBindIdentityAndPurpose) {
  SeededRng rng(8);
  EnrollmentRegistry reg = EnrollmentRegistry::generate(rng);
  EnrollmentRegistry other = EnrollmentRegistry::generate(rng);
  EXPECT_NE(reg.key(), other.key());
  for (const auto& who : universe(20)) {
    Digest secret = reg.secret_for(who);
    for (std::string_view purpose : {EnrollmentRegistry::kIssue,
                                     EnrollmentRegistry::kKeyServerEnroll,
                                     EnrollmentRegistry::kDirectoryPut}) {
      Digest proof = EnrollmentRegistry::make_proof(secret, purpose, who);
      EXPECT_TRUE(reg.verify(who, purpose, proof));
      EXPECT_FALSE(other.verify(who, purpose, proof));
      EXPECT_FALSE(reg.verify(id("someone-else"), purpose, proof));
    }
    EXPECT_FALSE(reg.verify(who, EnrollmentRegistry::kIssue,
                            EnrollmentRegistry::make_proof(
                                secret, EnrollmentRegistry::kKeyServerEnroll, who)));
  }
}

}  // namespace
}  // namespace mcd
