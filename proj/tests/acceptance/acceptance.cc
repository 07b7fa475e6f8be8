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


// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Runs the production pairing suite unless noted.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "mcd/authority/authority.h"
#include "mcd/authority/enrollment.h"
#include "mcd/client/flows.h"
#include "mcd/client/member.h"
#include "mcd/client/point_cache.h"
#include "mcd/crypto/group_suite.h"
#include "mcd/crypto/transparent_suite.h"
#include "mcd/net/transport.h"
#include "mcd/server/matching_server.h"
#include "mcd/sim/graph.h"
#include "mcd/sim/scenario.h"
#include "mcd/wire/messages.h"

namespace mcd {
namespace {

using Clock = std::chrono::steady_clock;
using Outputs = std::map<Identity, std::set<Identity>>;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool check_ok(const Report& r, const char* name) {
  const Check* c = r.find_check(name);
  return c != nullptr && c->pass;
}

std::string tag(const ScenarioConfig& c) {
  return std::string(scenario_name(c.name)) + "/" + std::string(protocol_name(c.protocol)) +
         " seed " + std::to_string(c.seed);
}

void require_report(Verdict& v, const Report& r, const ScenarioConfig& c) {
  if (!r.valid) {
    v.require(false, tag(c) + " invalid: " + r.invalid_reason);
    return;
  }
  v.require(r.passed(), tag(c) + " diverged" +
                            (r.divergences.empty() ? std::string() : ": " + r.divergences.front()));
}

void progress(const std::string& s) { std::cerr << "  .. " << s << "\n"; }

// Members over a shared authority; every member lists every other identity.
class Roster {
 public:
  Roster(SuitePtr suite, const std::vector<Identity>& ids)
      : authority_(Authority::setup(SecurityProfile::kTest, Bytes(32, 0x42), suite)),
        points_(std::make_shared<PointCache>(suite)) {
    std::set<Identity> all(ids.begin(), ids.end());
    for (const auto& id : ids) {
      std::set<Identity> others = all;
      others.erase(id);
      Digest proof = EnrollmentRegistry::make_proof(authority_.enrollment().secret_for(id),
                                                    EnrollmentRegistry::kIssue, id);
      members_.emplace(id, std::make_unique<MemberState>(authority_.params(),
                                                         authority_.issue_certificate(id, proof),
                                                         ContactList(id, others, {}), points_));
    }
  }
  MemberState& operator[](const Identity& id) { return *members_.at(id); }
  const SystemParams& params() const { return authority_.params(); }

 private:
  Authority authority_;
  std::shared_ptr<PointCache> points_;
  std::map<Identity, std::unique_ptr<MemberState>> members_;
};

Verdict token_symmetry() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<Identity> small;
  for (std::size_t i = 0; i < 30; ++i) small.push_back(sim_identity(i));
  Roster transparent(make_transparent_suite(), small);
  std::size_t checked = 0, failures = 0;
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (a == b) continue;
      ++checked;
      if (transparent[a].compute_token(b).encoding != transparent[b].compute_token(a).encoding) ++failures;
    }
  }
  v.require(checked == 30 * 29, "transparent pair count " + std::to_string(checked));

  std::vector<Identity> pool;
  for (std::size_t i = 0; i < 200; ++i) pool.push_back(sim_identity(1000 + i));
  Roster production(production_suite(), pool);
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  while (pairs.size() < 1000) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i != j) pairs.insert({i, j});
  }
  for (const auto& [i, j] : pairs) {
    ++checked;
    if (production[pool[i]].compute_token(pool[j]).encoding !=
        production[pool[j]].compute_token(pool[i]).encoding) {
      ++failures;
    }
  }
  const double secs = seconds_since(t0);
  v.require(failures == 0, std::to_string(failures) + " asymmetric pairs");
  v.require(secs < 30.0, "took " + fmt(secs) + " s");
  v.detail = (v.pass ? "" : v.detail + " | ") + "870 transparent + 1000 production pairs, " +
             std::to_string(failures) + " failures, " + fmt(secs) + " s";
  return v;
}

// Outputs of the honest static runs, kept for the key-server comparison.
std::map<std::uint64_t, Outputs> g_main_outputs;
std::map<std::uint64_t, Outputs> g_keyserver_outputs;

Verdict correctness() {
  Verdict v;
  double slowest = 0;
  std::size_t runs = 0, divergences = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (Protocol p : {Protocol::kMain, Protocol::kKeyServer, Protocol::kSimple}) {
      ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kHonestStatic, seed);
      c.protocol = p;
      c.transport = TransportKind::kSocket;
      v.require(c.graph.n_identities == 1000 && c.graph.n_members == 200 &&
                    c.graph.degree_target == 20.0 && c.graph.mutual_bias == 0.5,
                "unexpected graph parameters");
      Report r = run_scenario(c);
      ++runs;
      divergences += r.divergences.size();
      require_report(v, r, c);
      const double secs = r.elapsed_ms / 1000.0;
      slowest = std::max(slowest, secs);
      v.require(secs < 60.0, tag(c) + " took " + fmt(secs) + " s");
      if (p == Protocol::kMain) g_main_outputs[seed] = r.outputs;
      if (p == Protocol::kKeyServer) g_keyserver_outputs[seed] = r.outputs;
      progress(tag(c) + " " + fmt(secs) + " s");
    }
  }
  v.detail = (v.pass ? "" : v.detail + " | ") + std::to_string(runs) + " runs over sockets, " +
             std::to_string(divergences) + " divergences, slowest " + fmt(slowest) + " s";
  return v;
}

Verdict server_counts() {
  Verdict v;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kHonestStatic, seed);
    c.graph = GraphParams{};
    c.graph.seed = seed;
    c.graph.contacts_are_members = true;
    Report r = run_scenario(c);
    require_report(v, r, c);
    // Recount straight from the generated graph.
    SocialGraph g = gen_graph(c.graph);
    std::uint64_t s_c = 0, mutual = 0;
    for (const auto& m : g.members) {
      for (const auto& x : g.contacts(m)) {
        ++s_c;
        if (m < x && g.has_edge(x, m)) ++mutual;
      }
    }
    v.require(r.server_stats == (ServerStats{s_c, 2 * mutual}),
              "seed " + std::to_string(seed) + " reported s_c=" + std::to_string(r.server_stats.s_c) +
                  " s_mc=" + std::to_string(r.server_stats.s_mc) + ", recount " +
                  std::to_string(s_c) + "/" + std::to_string(2 * mutual));
    v.require(check_ok(r, "server_counts_brute_force"), "seed " + std::to_string(seed) + " brute force");
    if (seed == 1) {
      v.detail = "seed 1: s_c=" + std::to_string(s_c) + " s_mc=" + std::to_string(2 * mutual);
    }
    progress(tag(c));
  }
  if (v.pass) v.detail += "; 10 seeds match the recount";
  return v;
}

Verdict malicious_server() {
  Verdict v;
  double injected = 0, false_found = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kMaliciousServer, seed);
    c.inject_tuples = 20000;
    Report r = run_scenario(c);
    require_report(v, r, c);
    v.require(r.metrics.count("injected_random") && r.metrics.at("injected_random") >= 10000 &&
                  r.metrics.at("injected_grafted") >= 10000,
              "seed " + std::to_string(seed) + " injected too few");
    injected += r.metrics.count("injected_random")
                    ? r.metrics.at("injected_random") + r.metrics.at("injected_grafted")
                    : 0;
    false_found += r.metrics.count("false_discoveries") ? r.metrics.at("false_discoveries") : 1;
    v.require(check_ok(r, "zero_false_discoveries"), "seed " + std::to_string(seed) + " false discovery");
    progress(tag(c));
  }
  v.require(false_found == 0, "false discoveries present");
  v.detail = (v.pass ? "" : v.detail + " | ") + fmt(injected, 0) + " injected tuples over 10 seeds, " +
             fmt(false_found, 0) + " false discoveries";
  return v;
}

Verdict run_seeds(ScenarioName name, std::vector<const char*> checks, const char* what) {
  Verdict v;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c = ScenarioConfig::defaults(name, seed);
    Report r = run_scenario(c);
    require_report(v, r, c);
    for (const char* k : checks) v.require(check_ok(r, k), tag(c) + " " + k);
    progress(tag(c));
  }
  v.detail = (v.pass ? "" : v.detail + " | ") + "10 seeds, " + what;
  return v;
}

Verdict simple_weakness() {
  Verdict v;
  ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kSimpleWeakness, 1);
  Report r = run_scenario(c);
  require_report(v, r, c);
  auto m = [&](const char* k) { return r.metrics.count(k) ? r.metrics.at(k) : -1.0; };
  v.require(c.graph.n_identities == 30, "graph is not 30 identities");
  v.require(m("probes") == 30.0 * 29.0, "probes " + fmt(m("probes"), 0));
  v.require(m("probe_true_edges") > 0 && m("probe_hits") == m("probe_true_edges"), "missed edges");
  v.require(m("probe_false_hits") == 0, "false hits");
  v.detail = (v.pass ? "" : v.detail + " | ") + "probe hit " + fmt(m("probe_hits"), 0) + "/" +
             fmt(m("probe_true_edges"), 0) + " edges, " + fmt(m("probe_false_hits"), 0) + "/" +
             fmt(m("probes") - m("probe_true_edges"), 0) + " non-edges: attack succeeds";
  return v;
}

Verdict keyserver_variant() {
  Verdict v;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto a = g_main_outputs.find(seed);
    auto b = g_keyserver_outputs.find(seed);
    if (a == g_main_outputs.end() || b == g_keyserver_outputs.end()) {
      v.require(false, "no outputs for seed " + std::to_string(seed));
      continue;
    }
    ++compared;
    v.require(a->second == b->second, "seed " + std::to_string(seed) + " outputs differ");
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kKeyServerRun, seed);
    c.compare_main = false;
    v.require(c.phantom_fetches == 100, "phantom fetch count");
    Report r = run_scenario(c);
    require_report(v, r, c);
    v.require(check_ok(r, "phantom_keys_consistent"), tag(c) + " phantom keys");
    v.require(check_ok(r, "uniform_response_shape"), tag(c) + " response shape");
    progress(tag(c));
  }
  v.detail = (v.pass ? "" : v.detail + " | ") + std::to_string(compared) +
             " graphs identical to main; phantom keys stable over 100 fetches; enrolled and phantom responses same shape";
  return v;
}

Verdict directory_gating() {
  Verdict v;
  ScenarioConfig c = ScenarioConfig::defaults(ScenarioName::kDirectoryE2e, 1);
  v.require(c.random_fetches == 100000, "random fetch count");
  Report r = run_scenario(c);
  require_report(v, r, c);
  for (const char* k : {"discovered_pairs_fetch_keys", "undiscovered_contacts_denied",
                        "random_tokens_denied", "uniform_denial"}) {
    v.require(check_ok(r, k), k);
  }
  const Check* pairs = r.find_check("discovered_pairs_fetch_keys");
  v.detail = (v.pass ? "" : v.detail + " | ") + "pairs " + (pairs ? pairs->detail : "?") +
             "; 100000 random tokens, 0 releases; denials byte-identical";
  return v;
}

const std::string kHex64 = "[0-9a-f]{64}";

Verdict persistence_and_wire() {
  Verdict v;
  for (ScenarioName n : {ScenarioName::kHonestStatic, ScenarioName::kHonestDynamic}) {
    ScenarioConfig c = ScenarioConfig::defaults(n, 1);
    if (n == ScenarioName::kHonestStatic) c.graph = GraphParams{};
    c.restart_server = true;
    c.transport = TransportKind::kSocket;
    Report r = run_scenario(c);
    require_report(v, r, c);
    v.require(check_ok(r, "restart_restores_state"), tag(c) + " restart");
    progress(tag(c) + " with restart");
  }

  const std::string a(64, 'a');
  const std::string b = "0123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef";
  const auto ta = AugmentedToken::from_hex(a), tb = AugmentedToken::from_hex(b);
  const std::vector<std::pair<std::string, std::string>> golden = {
      {encode_request(MatchRequest{MatchOp::kSubmit, ta, tb}),
       R"({"op":"submit","t1":")" + a + R"(","t2":")" + b + R"("})"},
      {encode_request(MatchRequest{MatchOp::kQuery, ta, tb}),
       R"({"op":"query","t1":")" + a + R"(","t2":")" + b + R"("})"},
      {encode_request(MatchRequest{MatchOp::kDelete, ta, tb}),
       R"({"op":"delete","t1":")" + a + R"(","t2":")" + b + R"("})"},
      {encode_matches({TuplePair{ta, tb}}), R"({"matches":[[")" + a + R"(",")" + b + R"("]]})"},
      {encode_ok(), R"({"ok":true})"},
      {encode_stats({3, 2}), R"({"s_c":3,"s_mc":2})"},
      {encode_error(Errc::kPhase), R"({"err":"phase"})"},
      {encode_request(KeyRequest{KeyRequest::Op::kGetKey, "alice", {}, {}}), R"({"op":"getkey","id":"alice"})"},
      {encode_request(DirRequest{DirRequest::Op::kGet, "bob", {}, {}, {}, tb}),
       R"({"op":"dir_get","id":"bob","token":")" + b + R"("})"},
  };
  for (const auto& [got, want] : golden) v.require(got == want, "golden mismatch: " + got);

  // A recorded production run must use exactly these shapes.
  std::vector<Identity> ids = {Identity::parse("alice"), Identity::parse("bob"), Identity::parse("carol")};
  Roster roster(production_suite(), ids);
  MatchingServer server{MatchingServerOptions{}};
  InProcessTransport inner(server);
  Transcript transcript;
  RecordingTransport rec(inner, transcript);
  MatchClient client(rec);
  for (const auto& id : ids) submit_all(roster[id], client);
  client.advance_phase();
  for (const auto& id : ids) query_all(roster[id], client);
  client.stats();
  const std::regex request("\\{\"op\":\"(submit|query)\",\"t1\":\"" + kHex64 + "\",\"t2\":\"" + kHex64 +
                           "\"\\}|\\{\"op\":\"(advance_phase|stats)\"\\}");
  const std::string pair = "\\[\"" + kHex64 + "\",\"" + kHex64 + "\"\\]";
  const std::regex response("\\{\"ok\":true\\}|\\{\"matches\":\\[(" + pair + "(," + pair +
                            ")*)?\\]\\}|\\{\"s_c\":[0-9]+,\"s_mc\":[0-9]+\\}");
  std::size_t lines = 0;
  for (const auto& e : transcript.entries()) {
    ++lines;
    v.require(std::regex_match(e.request, request), "request shape: " + e.request);
    v.require(std::regex_match(e.response, response), "response shape: " + e.response);
  }
  v.require(lines == 6 + 1 + 6 + 1, "transcript has " + std::to_string(lines) + " messages");
  v.detail = (v.pass ? "" : v.detail + " | ") + "static and dynamic restarts restore state; " +
             std::to_string(golden.size()) + " golden encodings; " + std::to_string(lines) +
             " recorded messages conform";
  return v;
}

}  // namespace
}  // namespace mcd

int main() {
  using namespace mcd;
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1  token symmetry", token_symmetry},
      {"C2  correctness vs ideal oracle", correctness},
      {"C3  server counts", server_counts},
      {"C4  malicious server", malicious_server},
      {"C5  hidden contacts",
       [] {
         return run_seeds(ScenarioName::kHidingMember,
                          {"hidden_mutual_pairs_present", "hider_discovers_partners",
                           "partner_never_discovers_hider"},
                          "hiders find partners, partners never find hiders");
       }},
      {"C6  dynamic mode",
       [] {
         return run_seeds(ScenarioName::kHonestDynamic,
                          {"mutual_pairs_present", "later_discovers_on_first_query",
                           "earlier_misses_on_first_query", "earlier_discovers_on_requery",
                           "deletions_performed", "deleted_contact_never_discovered"},
                          "join order and deletion behave exactly");
       }},
      {"C7  simple variant probe", simple_weakness},
      {"C8  key-server variant", keyserver_variant},
      {"C9  directory gating", directory_gating},
      {"C10 persistence and wire format", persistence_and_wire},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << ": " << v.detail << " ["
              << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED") << std::endl;
  return all ? 0 : 1;
}
