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


#ifndef MCD_SIM_GRAPH_H_
#define MCD_SIM_GRAPH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcd/client/contact_list.h"
#include "mcd/crypto/identity.h"

namespace mcd {

struct GraphParams {
  std::size_t n_identities = 300;
  std::size_t n_members = 60;
  // Exactly one of edge_prob / degree_target is used; degree_target wins when
  // set. edge_prob is the base probability of each directed edge.
  std::optional<double> edge_prob;
  std::optional<double> degree_target = 10.0;
  // Probability that a one-directional edge gains its reverse.
  double mutual_bias = 0.5;
  // Probability that a member marks a contact hidden.
  double hide_prob = 0.0;
  // Restricts edges to member-to-member pairs.
  bool contacts_are_members = false;
  std::uint64_t seed = 1;

  nlohmann::ordered_json to_json() const;
  static GraphParams from_json(const nlohmann::json& j, GraphParams defaults);
};

struct SocialGraph {
  std::vector<Identity> identities;
  std::set<Identity> members;
  // Out-neighbours (contacts) per identity.
  std::map<Identity, std::set<Identity>> edges;
  // Per member, the contacts it hides from.
  std::map<Identity, std::set<Identity>> hidden_marks;

  const std::set<Identity>& contacts(const Identity& id) const;
  bool has_edge(const Identity& a, const Identity& b) const;
  bool is_member(const Identity& id) const { return members.contains(id); }
  bool hides(const Identity& hider, const Identity& other) const;
  ContactList contact_list(const Identity& id) const;
  std::size_t edge_count() const;
  // Self-edges, hidden marks outside the contact set, members outside the
  // identity list.
  bool valid() const;
};

// Identity number i rendered as a phone-like string.
Identity sim_identity(std::size_t i);

// Throws Error(kInvalidArgument) for out-of-range parameters.
SocialGraph gen_graph(const GraphParams& params);

struct OracleResult {
  std::map<Identity, std::set<Identity>> expected;
  // Sum of contact-list sizes over members: one stored tuple each.
  std::uint64_t s_c = 0;
  // Two per unordered mutual member pair, hidden or not.
  std::uint64_t s_mc = 0;
  std::uint64_t mutual_pairs = 0;
};

// M discovers X iff X in contacts(M), M in contacts(X), both are members and
// X does not hide from M.
OracleResult ideal_oracle(const SocialGraph& g);

}  // namespace mcd

#endif  // MCD_SIM_GRAPH_H_
