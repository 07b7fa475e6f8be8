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

#include "mcd/sim/graph.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "mcd/error.h"

namespace mcd {

nlohmann::ordered_json GraphParams::to_json() const {
  nlohmann::ordered_json j;
  j["n_identities"] = n_identities;
  j["n_members"] = n_members;
  if (edge_prob) j["edge_prob"] = *edge_prob;
  if (degree_target) j["degree_target"] = *degree_target;
  j["mutual_bias"] = mutual_bias;
  j["hide_prob"] = hide_prob;
  j["contacts_are_members"] = contacts_are_members;
  j["seed"] = seed;
  return j;
}

GraphParams GraphParams::from_json(const nlohmann::json& j, GraphParams p) {
  try {
    if (j.contains("n_identities")) p.n_identities = j["n_identities"].get<std::size_t>();
    if (j.contains("n_members")) p.n_members = j["n_members"].get<std::size_t>();
    if (j.contains("edge_prob")) {
      p.edge_prob = j["edge_prob"].get<double>();
      if (!j.contains("degree_target")) p.degree_target.reset();
    }
    if (j.contains("degree_target")) p.degree_target = j["degree_target"].get<double>();
    if (j.contains("mutual_bias")) p.mutual_bias = j["mutual_bias"].get<double>();
    if (j.contains("hide_prob")) p.hide_prob = j["hide_prob"].get<double>();
    if (j.contains("contacts_are_members")) p.contacts_are_members = j["contacts_are_members"].get<bool>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("graph params: ") + e.what());
  }
  return p;
}

const std::set<Identity>& SocialGraph::contacts(const Identity& id) const {
  static const std::set<Identity> kEmpty;
  auto it = edges.find(id);
  return it == edges.end() ? kEmpty : it->second;
}

bool SocialGraph::has_edge(const Identity& a, const Identity& b) const {
  return contacts(a).contains(b);
}

bool SocialGraph::hides(const Identity& hider, const Identity& other) const {
  auto it = hidden_marks.find(hider);
  return it != hidden_marks.end() && it->second.contains(other);
}

ContactList SocialGraph::contact_list(const Identity& id) const {
  std::set<Identity> visible;
  std::set<Identity> hidden;
  for (const auto& c : contacts(id)) (hides(id, c) ? hidden : visible).insert(c);
  return ContactList(id, std::move(visible), std::move(hidden));
}

std::size_t SocialGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [id, out] : edges) n += out.size();
  return n;
}

bool SocialGraph::valid() const {
  std::set<Identity> all(identities.begin(), identities.end());
  for (const auto& m : members) {
    if (!all.contains(m)) return false;
  }
  for (const auto& [id, out] : edges) {
    if (out.contains(id)) return false;
  }
  for (const auto& [id, marks] : hidden_marks) {
    if (!members.contains(id)) return false;
    for (const auto& h : marks) {
      if (!has_edge(id, h)) return false;
    }
  }
  return true;
}

Identity sim_identity(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "+1555%07zu", i);
  return Identity::parse(buf);
}

SocialGraph gen_graph(const GraphParams& p) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (p.n_members > p.n_identities || p.n_identities == 0 || p.n_identities > 9999999) {
    throw Error(Errc::kInvalidArgument, "need 0 < n_members <= n_identities <= 9999999");
  }
  if (!in_unit(p.mutual_bias) || !in_unit(p.hide_prob)) {
    throw Error(Errc::kInvalidArgument, "probabilities must lie in [0, 1]");
  }
  const double pool = static_cast<double>(p.contacts_are_members ? p.n_members : p.n_identities);
  double base = 0.0;
  if (p.degree_target) {
    if (*p.degree_target < 0) throw Error(Errc::kInvalidArgument, "degree_target must be >= 0");
    const double target = pool > 1 ? *p.degree_target / (pool - 1) : 0.0;
    if (target > 1.0) throw Error(Errc::kInvalidArgument, "degree_target exceeds the graph size");
    // Final edge probability is base * (1 + (1 - base) * bias).
    const double b = p.mutual_bias;
    base = b == 0 ? target : ((1 + b) - std::sqrt((1 + b) * (1 + b) - 4 * b * target)) / (2 * b);
  } else if (p.edge_prob) {
    if (!in_unit(*p.edge_prob)) throw Error(Errc::kInvalidArgument, "edge_prob must lie in [0, 1]");
    base = *p.edge_prob;
  } else {
    throw Error(Errc::kInvalidArgument, "edge_prob or degree_target is required");
  }

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SocialGraph g;
  g.identities.reserve(p.n_identities);
  for (std::size_t i = 0; i < p.n_identities; ++i) g.identities.push_back(sim_identity(i));

  std::vector<std::size_t> order(p.n_identities);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < p.n_members; ++i) g.members.insert(g.identities[order[i]]);

  std::vector<Identity> nodes;
  if (p.contacts_are_members) {
    nodes.assign(g.members.begin(), g.members.end());
  } else {
    nodes = g.identities;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      bool forward = unit(rng) < base;
      bool backward = unit(rng) < base;
      const double r = unit(rng);
      if (forward != backward && r < p.mutual_bias) forward = backward = true;
      if (forward) g.edges[nodes[i]].insert(nodes[j]);
      if (backward) g.edges[nodes[j]].insert(nodes[i]);
    }
  }

  if (p.hide_prob > 0) {
    for (const auto& m : g.members) {
      for (const auto& c : g.contacts(m)) {
        if (unit(rng) < p.hide_prob) g.hidden_marks[m].insert(c);
      }
    }
  }
  return g;
}

OracleResult ideal_oracle(const SocialGraph& g) {
  OracleResult r;
  for (const auto& m : g.members) {
    auto& out = r.expected[m];
    const auto& cm = g.contacts(m);
    r.s_c += cm.size();
    for (const auto& x : cm) {
      if (!g.is_member(x) || !g.has_edge(x, m)) continue;
      if (m < x) ++r.mutual_pairs;
      if (!g.hides(x, m)) out.insert(x);
    }
  }
  r.s_mc = 2 * r.mutual_pairs;
  return r;
}

}  // namespace mcd
