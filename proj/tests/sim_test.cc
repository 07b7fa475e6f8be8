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
#include "mcd/error.h"
#include "mcd/net/transport.h"
#include "mcd/server/matching_server.h"
#include "mcd/sim/adversary.h"
#include "mcd/sim/graph.h"
#include "mcd/sim/scenario.h"
#include "test_support.h"

namespace mcd {
namespace {

using testing_support::TransparentWorld;

GraphParams small_graph(std::uint64_t seed, std::size_t n = 30, std::size_t members = 20) {
  GraphParams g;
  g.n_identities = n;
  g.n_members = members;
  g.degree_target.reset();
  g.edge_prob = 0.25;
  g.seed = seed;
  return g;
}

// ---------------------------------------------------------------- graph

TEST(Graph, ZeroProbabilityHasNoEdges) {
  GraphParams p = small_graph(1);
  p.edge_prob = 0.0;
  SocialGraph g = gen_graph(p);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.members.size(), 20u);
  EXPECT_TRUE(g.valid());
}

TEST(Graph, FullProbabilityIsCompleteAndSymmetric) {
  GraphParams p = small_graph(2, 12, 12);
  p.edge_prob = 1.0;
  p.mutual_bias = 1.0;
  SocialGraph g = gen_graph(p);
  EXPECT_EQ(g.edge_count(), 12u * 11u);
  for (const auto& a : g.identities) {
    for (const auto& b : g.identities) {
      if (a != b) {
        EXPECT_TRUE(g.has_edge(a, b) && g.has_edge(b, a));
      }
    }
    EXPECT_FALSE(g.has_edge(a, a));
  }
}

TEST(Graph, DeterministicPerSeed) {
  GraphParams p = small_graph(3);
  p.hide_prob = 0.3;
  SocialGraph a = gen_graph(p), b = gen_graph(p);
  EXPECT_EQ(a.edges, b.edges);
  EXPECT_EQ(a.members, b.members);
  EXPECT_EQ(a.hidden_marks, b.hidden_marks);
  p.seed = 4;
  EXPECT_NE(gen_graph(p).edges, a.edges);
}

TEST(Graph, RejectsInvalidParams) {
  GraphParams p = small_graph(5);
  p.n_members = 31;
  EXPECT_THROW(gen_graph(p), Error);
  p = small_graph(5);
  p.edge_prob = 1.5;
  EXPECT_THROW(gen_graph(p), Error);
  p = small_graph(5);
  p.mutual_bias = -0.1;
  EXPECT_THROW(gen_graph(p), Error);
  p = small_graph(5);
  p.edge_prob.reset();
  EXPECT_THROW(gen_graph(p), Error);
  p = small_graph(5);
  p.degree_target = 40.0;
  EXPECT_THROW(gen_graph(p), Error);
  p.n_identities = 0;
  EXPECT_THROW(gen_graph(p), Error);
}

TEST(Graph, DegreeTargetHitsMeanOutDegree) {
  GraphParams p;
  p.n_identities = 1000;
  p.n_members = 200;
  p.degree_target = 20.0;
  p.mutual_bias = 0.5;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    p.seed = seed;
    SocialGraph g = gen_graph(p);
    double mean = static_cast<double>(g.edge_count()) / 1000.0;
    EXPECT_NEAR(mean, 20.0, 0.6) << "seed " << seed;
  }
}

TEST(Graph, MembersOnlyAndHiddenMarksWithinContacts) {
  GraphParams p = small_graph(6, 40, 15);
  p.contacts_are_members = true;
  p.hide_prob = 0.5;
  SocialGraph g = gen_graph(p);
  for (const auto& [from, tos] : g.edges) {
    EXPECT_TRUE(g.is_member(from));
    for (const auto& to : tos) EXPECT_TRUE(g.is_member(to));
  }
  for (const auto& [m, hs] : g.hidden_marks) {
    for (const auto& h : hs) EXPECT_TRUE(g.has_edge(m, h));
  }
  EXPECT_TRUE(g.valid());
  ContactList cl = g.contact_list(*g.members.begin());
  EXPECT_EQ(cl.size(), g.contacts(*g.members.begin()).size());
}

TEST(Graph, ParamsJsonRoundTrip) {
  GraphParams p = small_graph(7);
  p.hide_prob = 0.2;
  p.contacts_are_members = true;
  GraphParams back = GraphParams::from_json(p.to_json(), GraphParams{});
  EXPECT_EQ(back.to_json().dump(), p.to_json().dump());
  GraphParams partial = GraphParams::from_json(nlohmann::json{{"seed", 99}}, p);
  EXPECT_EQ(partial.seed, 99u);
  EXPECT_EQ(partial.n_identities, p.n_identities);
}

TEST(Graph, SimIdentityFormat) {
  EXPECT_EQ(sim_identity(42).value(), "+15550000042");
}

// ---------------------------------------------------------------- oracle

// Second, independent statement of the discovery predicate.
std::map<Identity, std::set<Identity>> brute_force(const SocialGraph& g) {
  std::map<Identity, std::set<Identity>> out;
  for (const auto& m : g.identities) {
    if (!g.members.contains(m)) continue;
    out[m];
    for (const auto& x : g.identities) {
      if (x == m || !g.members.contains(x)) continue;
      auto em = g.edges.find(m);
      auto ex = g.edges.find(x);
      bool m_lists_x = em != g.edges.end() && em->second.contains(x);
      bool x_lists_m = ex != g.edges.end() && ex->second.contains(m);
      auto hx = g.hidden_marks.find(x);
      bool x_hides = hx != g.hidden_marks.end() && hx->second.contains(m);
      if (m_lists_x && x_lists_m && !x_hides) out[m].insert(x);
    }
  }
  return out;
}

TEST(Oracle, MutualPair) {
  SocialGraph g;
  Identity a = sim_identity(0), b = sim_identity(1);
  g.identities = {a, b};
  g.members = {a, b};
  g.edges[a] = {b};
  g.edges[b] = {a};
  OracleResult r = ideal_oracle(g);
  EXPECT_EQ(r.expected[a], std::set<Identity>{b});
  EXPECT_EQ(r.expected[b], std::set<Identity>{a});
  EXPECT_EQ(r.s_c, 2u);
  EXPECT_EQ(r.s_mc, 2u);
  EXPECT_EQ(r.mutual_pairs, 1u);
  g.hidden_marks[a] = {b};
  r = ideal_oracle(g);
  EXPECT_EQ(r.expected[a], std::set<Identity>{b});
  EXPECT_TRUE(r.expected[b].empty());
  EXPECT_EQ(r.s_mc, 2u);
}

TEST(Oracle, MatchesBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GraphParams p = small_graph(seed);
    p.hide_prob = 0.25;
    SocialGraph g = gen_graph(p);
    OracleResult r = ideal_oracle(g);
    auto want = brute_force(g);
    for (const auto& m : g.members) ASSERT_EQ(r.expected[m], want[m]) << "seed " << seed;
    std::uint64_t s_c = 0, pairs = 0;
    for (const auto& m : g.members) s_c += g.contacts(m).size();
    for (const auto& a : g.members) {
      for (const auto& b : g.members) {
        if (a < b && g.has_edge(a, b) && g.has_edge(b, a)) ++pairs;
      }
    }
    EXPECT_EQ(r.s_c, s_c);
    EXPECT_EQ(r.mutual_pairs, pairs);
    EXPECT_EQ(r.s_mc, 2 * pairs);
  }
}

// ---------------------------------------------------------------- adversary

TEST(Adversary, InjectedTuplesNeverMatch) {
  TransparentWorld w;
  Identity a = sim_identity(1), b = sim_identity(2), c = sim_identity(3);
  auto ma = w.member(a, {b, c});
  auto mb = w.member(b, {a});
  auto mc = w.member(c, {b});
  MatchingServer honest{MatchingServerOptions{}};
  MaliciousOptions mo;
  mo.inject_random = 5000;
  mo.inject_grafted = 5000;
  mo.per_response = 5000;
  mo.seed = 3;
  MaliciousMatchHandler evil(honest, mo);
  InProcessTransport t(evil);
  MatchClient client(t);
  for (DiscoveryMember* m : {static_cast<DiscoveryMember*>(ma.get()),
                             static_cast<DiscoveryMember*>(mb.get()),
                             static_cast<DiscoveryMember*>(mc.get())}) {
    submit_all(*m, client);
  }
  honest.advance_phase();
  EXPECT_EQ(query_all(*ma, client).discovered, std::set<Identity>{b});
  EXPECT_EQ(query_all(*mb, client).discovered, std::set<Identity>{a});
  EXPECT_TRUE(query_all(*mc, client).discovered.empty());
  MaliciousCounters k = evil.counters();
  EXPECT_EQ(k.injected_random, 5000u);
  EXPECT_EQ(k.injected_grafted, 5000u);
  EXPECT_GT(k.replayed, 0u);
}

TEST(Adversary, DroppingHidesRealMatches) {
  TransparentWorld w;
  Identity a = sim_identity(1), b = sim_identity(2);
  auto ma = w.member(a, {b});
  auto mb = w.member(b, {a});
  MatchingServer honest{MatchingServerOptions{}};
  MaliciousOptions mo;
  mo.drop_responses = 1;
  mo.replay_stored = 64;
  MaliciousMatchHandler evil(honest, mo);
  InProcessTransport t(evil);
  MatchClient client(t);
  submit_all(*ma, client);
  submit_all(*mb, client);
  honest.advance_phase();
  EXPECT_TRUE(query_all(*ma, client).discovered.empty());
  EXPECT_EQ(query_all(*mb, client).discovered, std::set<Identity>{a});
  EXPECT_EQ(evil.counters().dropped, 1u);
}

// ---------------------------------------------------------------- transcript

TEST(Transcript, MatchingTrafficCarriesNoIdentityBytes) {
  TransparentWorld w;
  GraphParams p = small_graph(11);
  SocialGraph g = gen_graph(p);
  MatchingServer server{MatchingServerOptions{}};
  InProcessTransport inner(server);
  Transcript tr;
  RecordingTransport rec(inner, tr);
  MatchClient client(rec);
  std::vector<std::unique_ptr<MemberState>> members;
  for (const auto& m : g.members) {
    ContactList cl = g.contact_list(m);
    members.push_back(w.member(m, cl.visible(), cl.hidden()));
  }
  for (auto& m : members) submit_all(*m, client);
  server.advance_phase();
  for (auto& m : members) query_all(*m, client);
  ASSERT_GT(tr.messages(), 0u);
  for (const auto& e : tr.entries()) {
    for (const auto& who : g.identities) {
      const std::string digits = who.value().substr(1);
      ASSERT_EQ(e.request.find(who.value()), std::string::npos);
      ASSERT_EQ(e.request.find(to_hex(who.encoding())), std::string::npos);
      ASSERT_EQ(e.response.find(to_hex(who.encoding())), std::string::npos);
      ASSERT_EQ(e.request.find(to_hex(as_bytes(who.value()))), std::string::npos);
      ASSERT_EQ(e.request.find(to_hex(as_bytes(digits))), std::string::npos);
    }
  }
}

// ---------------------------------------------------------------- scenarios

ScenarioConfig quick(ScenarioName name, std::uint64_t seed,
                     TransportKind transport = TransportKind::kInProcess) {
  ScenarioConfig c = ScenarioConfig::defaults(name, seed);
  c.transparent_suite = true;
  c.transport = transport;
  c.actors = 4;
  c.graph.n_identities = std::min<std::size_t>(c.graph.n_identities, 60);
  c.graph.n_members = std::min<std::size_t>(c.graph.n_members, 30);
  if (c.graph.degree_target) c.graph.degree_target = 6.0;
  c.inject_tuples = 2000;
  c.random_fetches = 2000;
  c.phantom_fetches = 10;
  c.phantom_identities = 5;
  return c;
}

std::string failures(const Report& r) {
  std::string out = r.invalid_reason;
  for (const auto& d : r.divergences) out += "\n" + d;
  return out;
}

class EveryScenario : public ::testing::TestWithParam<ScenarioName> {};

TEST_P(EveryScenario, PassesInProcess) {
  Report r = run_scenario(quick(GetParam(), 5));
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_FALSE(r.checks.empty());
}

TEST_P(EveryScenario, PassesOverSockets) {
  Report r = run_scenario(quick(GetParam(), 6, TransportKind::kSocket));
  EXPECT_TRUE(r.passed()) << failures(r);
}

INSTANTIATE_TEST_SUITE_P(All, EveryScenario, ::testing::ValuesIn(all_scenarios()),
                         [](const auto& info) { return std::string(scenario_name(info.param)); });

TEST(Scenario, TriangleCounts) {
  ScenarioConfig c = quick(ScenarioName::kHonestStatic, 1);
  c.graph.n_identities = 3;
  c.graph.n_members = 3;
  c.graph.degree_target.reset();
  c.graph.edge_prob = 1.0;
  c.graph.mutual_bias = 1.0;
  Report r = run_scenario(c);
  ASSERT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(r.server_stats, (ServerStats{6, 6}));
  for (const auto& [m, out] : r.outputs) EXPECT_EQ(out.size(), 2u);
}

TEST(Scenario, MaliciousServerZeroFalsePositives) {
  ScenarioConfig c = quick(ScenarioName::kMaliciousServer, 2);
  c.inject_tuples = 10000;
  c.drop_responses = 0;
  Report r = run_scenario(c);
  ASSERT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(r.metrics.at("false_discoveries"), 0.0);
  EXPECT_EQ(r.metrics.at("injected_random") + r.metrics.at("injected_grafted"), 10000.0);
}

TEST(Scenario, OrderSeedDoesNotChangeOutputs) {
  ScenarioConfig c = quick(ScenarioName::kHonestStatic, 3);
  c.graph.hide_prob = 0.2;
  std::map<Identity, std::set<Identity>> first;
  for (std::uint64_t order : {1u, 2u, 3u}) {
    c.order_seed = order;
    Report r = run_scenario(c);
    ASSERT_TRUE(r.passed()) << failures(r);
    if (first.empty()) {
      first = r.outputs;
    } else {
      EXPECT_EQ(r.outputs, first);
    }
  }
}

TEST(Scenario, RestartFromLogKeepsResults) {
  for (ScenarioName n : {ScenarioName::kHonestStatic, ScenarioName::kHonestDynamic}) {
    ScenarioConfig c = quick(n, 4, TransportKind::kSocket);
    c.restart_server = true;
    Report r = run_scenario(c);
    ASSERT_TRUE(r.passed()) << failures(r);
    const Check* k = r.find_check("restart_restores_state");
    ASSERT_NE(k, nullptr);
    EXPECT_TRUE(k->pass);
  }
}

TEST(Scenario, InfrastructureFailureIsInvalidNotFailed) {
  ScenarioConfig c = quick(ScenarioName::kHonestStatic, 1, TransportKind::kSocket);
  c.work_dir = "/proc/version/mcd-work";
  Report r = run_scenario(c);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.invalid_reason.empty());
  EXPECT_TRUE(r.divergences.empty());
}

TEST(Scenario, ConfigJsonRoundTrip) {
  for (ScenarioName n : all_scenarios()) {
    ScenarioConfig c = ScenarioConfig::defaults(n, 9);
    c.order_seed = 4;
    ScenarioConfig back = ScenarioConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json().dump(), c.to_json().dump());
    EXPECT_EQ(parse_scenario_name(scenario_name(n)), n);
  }
  ScenarioConfig partial =
      ScenarioConfig::from_json(nlohmann::json{{"scenario", "keyserver_run"}, {"seed", 3}});
  EXPECT_EQ(partial.protocol, Protocol::kKeyServer);
  EXPECT_EQ(partial.seed, 3u);
  EXPECT_EQ(partial.effective_order_seed(), 3u);
  EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"scenario", "nope"}}), Error);
}

TEST(Scenario, ReportJsonShape) {
  Report r = run_scenario(quick(ScenarioName::kHidingMember, 2));
  auto j = r.to_json();
  for (const char* key : {"config", "valid", "passed", "outputs", "expected", "server_stats",
                          "checks", "divergences", "metrics"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("passed").get<bool>(), r.passed());
}

TEST(Scenario, DefaultsPerName) {
  EXPECT_EQ(ScenarioConfig::defaults(ScenarioName::kHonestStatic).graph.n_identities, 1000u);
  EXPECT_EQ(ScenarioConfig::defaults(ScenarioName::kSimpleWeakness).protocol, Protocol::kSimple);
  EXPECT_EQ(ScenarioConfig::defaults(ScenarioName::kKeyServerCollusion).protocol,
            Protocol::kKeyServer);
  EXPECT_GT(ScenarioConfig::defaults(ScenarioName::kHidingMember).graph.hide_prob, 0.0);
}

}  // namespace
}  // namespace mcd
