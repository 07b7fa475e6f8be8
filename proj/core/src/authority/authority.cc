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

#include "mcd/authority/authority.h"

#include "mcd/error.h"

namespace mcd {

namespace {

using json = nlohmann::json;

std::string get_string(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
    throw Error(Errc::kMalformed, std::string("missing string field ") + key);
  }
  return j[key].get<std::string>();
}

SourcePoint get_point(const json& j, const char* key, const GroupSuite& suite, Slot slot) {
  return suite.decode_point(slot, from_hex(get_string(j, key)));
}

SystemParams make_params(SuitePtr suite, const Scalar& s) {
  SystemParams p;
  p.suite = suite;
  p.p1 = suite->generator(Slot::kSlot1);
  p.p2 = suite->generator(Slot::kSlot2);
  p.p_pub1 = suite->mul(p.p1, s);
  p.p_pub2 = suite->mul(p.p2, s);
  return p;
}

}  // namespace

std::string_view profile_name(SecurityProfile p) {
  return p == SecurityProfile::kTest ? "test" : "production";
}

std::optional<SecurityProfile> parse_profile(std::string_view name) {
  if (name == "test") return SecurityProfile::kTest;
  if (name == "production") return SecurityProfile::kProduction;
  return std::nullopt;
}

bool SystemParams::consistent() const {
  return suite->pairings_equal(p_pub1, p2, p1, p_pub2);
}

nlohmann::ordered_json SystemParams::to_json() const {
  nlohmann::ordered_json j;
  j["suite_id"] = suite_name(suite->id());
  j["q"] = to_hex(suite->order());
  j["generators"] = {to_hex(p1.encoding), to_hex(p2.encoding)};
  j["p_pub1"] = to_hex(p_pub1.encoding);
  j["p_pub2"] = to_hex(p_pub2.encoding);
  j["n"] = n;
  j["version"] = version;
  return j;
}

SystemParams SystemParams::from_json(const json& j, SuitePtr suite) {
  try {
    auto id = parse_suite_name(get_string(j, "suite_id"));
    if (!id) throw Error(Errc::kMalformed, "unknown suite_id");
    if (!suite) suite = suite_by_id(*id);
    if (suite->id() != *id) throw Error(Errc::kSuiteMismatch, "suite_id does not match the suite");
    if (get_string(j, "q") != to_hex(suite->order())) throw Error(Errc::kMalformed, "q mismatch");
    const json& gens = j.at("generators");
    if (!gens.is_array() || gens.size() != 2) throw Error(Errc::kMalformed, "generators must be a pair");
    SystemParams p;
    p.suite = suite;
    p.p1 = suite->decode_point(Slot::kSlot1, from_hex(gens[0].get<std::string>()));
    p.p2 = suite->decode_point(Slot::kSlot2, from_hex(gens[1].get<std::string>()));
    if (p.p1 != suite->generator(Slot::kSlot1) || p.p2 != suite->generator(Slot::kSlot2)) {
      throw Error(Errc::kMalformed, "generators differ from the suite generators");
    }
    p.p_pub1 = get_point(j, "p_pub1", *suite, Slot::kSlot1);
    p.p_pub2 = get_point(j, "p_pub2", *suite, Slot::kSlot2);
    p.n = j.at("n").get<unsigned>();
    p.version = get_string(j, "version");
    if (p.n != 256) throw Error(Errc::kMalformed, "only n = 256 is supported");
    if (p.version != kProtocolVersion) throw Error(Errc::kMalformed, "unsupported version");
    return p;
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformed, std::string("params: ") + e.what());
  }
}

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["identity"] = identity.value();
  j["c1"] = to_hex(c1.encoding);
  j["c2"] = to_hex(c2.encoding);
  return j;
}

Certificate Certificate::from_json(const json& j, const GroupSuite& suite) {
  return {Identity::parse(get_string(j, "identity")), get_point(j, "c1", suite, Slot::kSlot1),
          get_point(j, "c2", suite, Slot::kSlot2)};
}

void MasterSecret::erase() {
  s_.wipe();
  live_ = false;
}

Authority Authority::setup(SecurityProfile profile, std::optional<Bytes> seed, SuitePtr suite) {
  if (seed && profile == SecurityProfile::kProduction) {
    throw Error(Errc::kPolicy, "seeded setup is only allowed in the test profile");
  }
  if (seed && seed->size() != 32) throw Error(Errc::kInvalidArgument, "seed must be 32 bytes");
  SystemRng system;
  std::optional<SeededRng> seeded;
  if (seed) seeded.emplace(*seed);
  Rng& rng = seeded ? static_cast<Rng&>(*seeded) : static_cast<Rng&>(system);
  Scalar s = suite->random_scalar(rng);
  EnrollmentRegistry enrollment = EnrollmentRegistry::generate(rng);
  Authority a(make_params(suite, s), MasterSecret(s), std::move(enrollment));
  s.wipe();
  return a;
}

Authority Authority::from_secret(SuitePtr suite, MasterSecret master,
                                 EnrollmentRegistry enrollment) {
  SystemParams params = make_params(suite, master.s_);
  return Authority(std::move(params), master, std::move(enrollment));
}

Certificate Authority::issue_certificate(const Identity& id, ByteSpan auth_proof) {
  if (!master_.live()) throw Error(Errc::kIssuanceClosed, "master secret has been erased");
  if (!enrollment_.verify(id, EnrollmentRegistry::kIssue, auth_proof)) {
    throw Error(Errc::kUnauthorized, "enrollment proof rejected");
  }
  const GroupSuite& suite = *params_.suite;
  PointPair q = suite.hash_to_points(id);
  return {id, suite.mul(q.slot1, master_.s_), suite.mul(q.slot2, master_.s_)};
}

nlohmann::ordered_json Authority::state_json() const {
  nlohmann::ordered_json j;
  j["suite_id"] = suite_name(params_.suite->id());
  j["live"] = master_.live();
  if (master_.live()) j["s"] = to_hex(master_.s_.bytes());
  j["enrollment_key"] = to_hex(enrollment_.key());
  j["params"] = params_.to_json();
  return j;
}

Authority Authority::from_state_json(const json& j) {
  SystemParams params = SystemParams::from_json(j.at("params"));
  EnrollmentRegistry enrollment(from_hex(get_string(j, "enrollment_key")));
  MasterSecret master;
  if (j.at("live").get<bool>()) {
    Bytes raw = from_hex(get_string(j, "s"));
    master = MasterSecret(Scalar::from_bytes(raw));
    secure_zero(raw);
    if (params.suite->mul(params.p1, master.s_) != params.p_pub1) {
      throw Error(Errc::kMalformed, "master secret does not match the parameters");
    }
  }
  return Authority(std::move(params), master, std::move(enrollment));
}

bool verify_certificate(const SystemParams& params, const Certificate& cert) {
  const GroupSuite& suite = *params.suite;
  try {
    PointPair q = suite.hash_to_points(cert.identity);
    if (suite.is_identity(cert.c1) || suite.is_identity(cert.c2)) return false;
    return suite.pairings_equal(cert.c1, params.p2, q.slot1, params.p_pub2) &&
           suite.pairings_equal(params.p1, cert.c2, params.p_pub1, q.slot2);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace mcd
