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


// Seeded end-to-end runs of the whole system against an ideal oracle.

#ifndef MCD_SIM_SCENARIO_H_
#define MCD_SIM_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcd/sim/graph.h"
#include "mcd/wire/messages.h"

namespace mcd {

enum class ScenarioName {
  kHonestStatic,
  kHonestDynamic,
  kMaliciousServer,
  kHidingMember,
  kGuessingAttacker,
  kReplay,
  kSimpleWeakness,
  kKeyServerRun,
  kKeyServerCollusion,
  kDirectoryE2e,
};

enum class Protocol { kMain, kSimple, kKeyServer };
enum class TransportKind { kSocket, kInProcess };

std::string_view scenario_name(ScenarioName name);
std::optional<ScenarioName> parse_scenario_name(std::string_view s);
std::vector<ScenarioName> all_scenarios();
std::string_view protocol_name(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);
std::string_view transport_name(TransportKind t);
std::optional<TransportKind> parse_transport(std::string_view s);

struct ScenarioConfig {
  ScenarioName name = ScenarioName::kHonestStatic;
  std::uint64_t seed = 1;
  // Seeds the interleaving of member actors; defaults to seed.
  std::optional<std::uint64_t> order_seed;
  Protocol protocol = Protocol::kMain;
  GraphParams graph;
  bool transparent_suite = false;
  bool pad_responses = false;
  double rate_limit = 0;
  TransportKind transport = TransportKind::kSocket;
  std::size_t actors = 8;
  std::size_t server_workers = 8;
  // malicious_server: fabricated plus grafted tuples over the whole run.
  std::size_t inject_tuples = 10000;
  std::size_t drop_responses = 0;
  // guessing_attacker: number of certificate-less participants.
  std::size_t attackers = 2;
  // honest_dynamic: contact deletions performed right after joining.
  std::size_t deletions = 3;
  // keyserver_run: repeated fetches per unenrolled identity.
  std::size_t phantom_fetches = 100;
  std::size_t phantom_identities = 20;
  // directory_e2e: random-token fetch attempts.
  std::size_t random_fetches = 100000;
  // Kill the matching server mid-run and rebuild it from its log.
  bool restart_server = false;
  // keyserver_run: also run the main protocol on the same graph.
  bool compare_main = true;
  unsigned kdf_cost = 0;
  std::optional<std::filesystem::path> work_dir;

  static ScenarioConfig defaults(ScenarioName name, std::uint64_t seed = 1);
  nlohmann::ordered_json to_json() const;
  // Fields absent from j take the defaults for the named scenario.
  static ScenarioConfig from_json(const nlohmann::json& j);
  std::uint64_t effective_order_seed() const { return order_seed.value_or(seed); }
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TranscriptStats {
  std::size_t messages = 0;
  std::size_t bytes = 0;
  std::size_t connections = 0;
};

struct Report {
  ScenarioConfig config;
  bool valid = true;
  std::string invalid_reason;
  std::size_t n_identities = 0;
  std::size_t n_members = 0;
  std::size_t n_edges = 0;
  std::uint64_t mutual_pairs = 0;
  std::map<Identity, std::set<Identity>> outputs;
  std::map<Identity, std::set<Identity>> expected;
  ServerStats server_stats;
  ServerStats oracle_stats;
  TranscriptStats transcript;
  std::vector<std::string> divergences;
  std::vector<Check> checks;
  std::map<std::string, double> metrics;
  double elapsed_ms = 0;

  bool passed() const { return valid && divergences.empty(); }
  void check(std::string name, bool pass, std::string detail = {});
  const Check* find_check(std::string_view name) const;
  // Records a divergence for every member whose output differs from expected.
  void compare_outputs();
  nlohmann::ordered_json to_json() const;
};

Report run_scenario(const ScenarioConfig& config);

}  // namespace mcd

#endif  // MCD_SIM_SCENARIO_H_
