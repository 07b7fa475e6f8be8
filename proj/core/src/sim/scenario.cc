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

#include "mcd/sim/scenario.h"

#include <stdlib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <system_error>
#include <thread>

#include "mcd/authority/authority.h"
#include "mcd/client/flows.h"
#include "mcd/client/member.h"
#include "mcd/client/point_cache.h"
#include "mcd/crypto/hash.h"
#include "mcd/crypto/rng.h"
#include "mcd/crypto/transparent_suite.h"
#include "mcd/directory/key_directory.h"
#include "mcd/error.h"
#include "mcd/net/line_server.h"
#include "mcd/net/transport.h"
#include "mcd/server/matching_server.h"
#include "mcd/sim/adversary.h"
#include "mcd/variants/keyserver.h"
#include "mcd/variants/simple.h"

namespace mcd {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<ScenarioName, std::string_view> kScenarioNames[] = {
    {ScenarioName::kHonestStatic, "honest_static"},
    {ScenarioName::kHonestDynamic, "honest_dynamic"},
    {ScenarioName::kMaliciousServer, "malicious_server"},
    {ScenarioName::kHidingMember, "hiding_member"},
    {ScenarioName::kGuessingAttacker, "guessing_attacker"},
    {ScenarioName::kReplay, "replay"},
    {ScenarioName::kSimpleWeakness, "simple_weakness"},
    {ScenarioName::kKeyServerRun, "keyserver_run"},
    {ScenarioName::kKeyServerCollusion, "keyserver_collusion"},
    {ScenarioName::kDirectoryE2e, "directory_e2e"},
};

}  // namespace

std::string_view scenario_name(ScenarioName name) {
  for (const auto& [n, s] : kScenarioNames) {
    if (n == name) return s;
  }
  return "unknown";
}

std::optional<ScenarioName> parse_scenario_name(std::string_view s) {
  for (const auto& [n, str] : kScenarioNames) {
    if (str == s) return n;
  }
  return std::nullopt;
}

std::vector<ScenarioName> all_scenarios() {
  std::vector<ScenarioName> out;
  for (const auto& [n, s] : kScenarioNames) out.push_back(n);
  return out;
}

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kMain: return "main";
    case Protocol::kSimple: return "simple";
    case Protocol::kKeyServer: return "keyserver";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "main") return Protocol::kMain;
  if (s == "simple") return Protocol::kSimple;
  if (s == "keyserver") return Protocol::kKeyServer;
  return std::nullopt;
}

std::string_view transport_name(TransportKind t) {
  return t == TransportKind::kSocket ? "socket" : "inprocess";
}

std::optional<TransportKind> parse_transport(std::string_view s) {
  if (s == "socket") return TransportKind::kSocket;
  if (s == "inprocess") return TransportKind::kInProcess;
  return std::nullopt;
}

ScenarioConfig ScenarioConfig::defaults(ScenarioName name, std::uint64_t seed) {
  ScenarioConfig c;
  c.name = name;
  c.seed = seed;
  c.graph.seed = seed;
  switch (name) {
    case ScenarioName::kHonestStatic:
      c.graph.n_identities = 1000;
      c.graph.n_members = 200;
      c.graph.degree_target = 20.0;
      break;
    case ScenarioName::kMaliciousServer:
      c.drop_responses = 5;
      break;
    case ScenarioName::kHidingMember:
      c.graph.hide_prob = 0.3;
      break;
    case ScenarioName::kSimpleWeakness:
      c.protocol = Protocol::kSimple;
      c.graph.n_identities = 30;
      c.graph.n_members = 30;
      c.graph.degree_target.reset();
      c.graph.edge_prob = 0.3;
      c.graph.contacts_are_members = true;
      break;
    case ScenarioName::kKeyServerRun:
      c.protocol = Protocol::kKeyServer;
      break;
    case ScenarioName::kKeyServerCollusion:
      c.protocol = Protocol::kKeyServer;
      c.graph.n_identities = 200;
      c.graph.n_members = 40;
      c.graph.degree_target = 8.0;
      break;
    default:
      break;
  }
  return c;
}

ordered_json ScenarioConfig::to_json() const {
  ordered_json j;
  j["scenario"] = scenario_name(name);
  j["seed"] = seed;
  if (order_seed) j["order_seed"] = *order_seed;
  j["protocol"] = protocol_name(protocol);
  j["graph"] = graph.to_json();
  j["transparent_suite"] = transparent_suite;
  j["pad_responses"] = pad_responses;
  j["rate_limit"] = rate_limit;
  j["transport"] = transport_name(transport);
  j["actors"] = actors;
  j["server_workers"] = server_workers;
  j["inject_tuples"] = inject_tuples;
  j["drop_responses"] = drop_responses;
  j["attackers"] = attackers;
  j["deletions"] = deletions;
  j["phantom_fetches"] = phantom_fetches;
  j["phantom_identities"] = phantom_identities;
  j["random_fetches"] = random_fetches;
  j["restart_server"] = restart_server;
  j["compare_main"] = compare_main;
  j["kdf_cost"] = kdf_cost;
  if (work_dir) j["work_dir"] = work_dir->string();
  return j;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::kInvalidArgument, "scenario config must be a JSON object");
  try {
    auto name = parse_scenario_name(j.value("scenario", std::string("honest_static")));
    if (!name) throw Error(Errc::kInvalidArgument, "unknown scenario name");
    const std::uint64_t seed = j.value("seed", std::uint64_t{1});
    ScenarioConfig c = defaults(*name, seed);
    if (j.contains("order_seed")) c.order_seed = j["order_seed"].get<std::uint64_t>();
    if (j.contains("protocol")) {
      auto p = parse_protocol(j["protocol"].get<std::string>());
      if (!p) throw Error(Errc::kInvalidArgument, "unknown protocol");
      c.protocol = *p;
    }
    if (j.contains("graph")) c.graph = GraphParams::from_json(j["graph"], c.graph);
    if (j.contains("transport")) {
      auto t = parse_transport(j["transport"].get<std::string>());
      if (!t) throw Error(Errc::kInvalidArgument, "unknown transport");
      c.transport = *t;
    }
    c.transparent_suite = j.value("transparent_suite", c.transparent_suite);
    c.pad_responses = j.value("pad_responses", c.pad_responses);
    c.rate_limit = j.value("rate_limit", c.rate_limit);
    c.actors = j.value("actors", c.actors);
    c.server_workers = j.value("server_workers", c.server_workers);
    c.inject_tuples = j.value("inject_tuples", c.inject_tuples);
    c.drop_responses = j.value("drop_responses", c.drop_responses);
    c.attackers = j.value("attackers", c.attackers);
    c.deletions = j.value("deletions", c.deletions);
    c.phantom_fetches = j.value("phantom_fetches", c.phantom_fetches);
    c.phantom_identities = j.value("phantom_identities", c.phantom_identities);
    c.random_fetches = j.value("random_fetches", c.random_fetches);
    c.restart_server = j.value("restart_server", c.restart_server);
    c.compare_main = j.value("compare_main", c.compare_main);
    c.kdf_cost = j.value("kdf_cost", c.kdf_cost);
    if (j.contains("work_dir")) c.work_dir = j["work_dir"].get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("scenario config: ") + e.what());
  }
}

void Report::check(std::string name, bool pass, std::string detail) {
  if (!pass) divergences.push_back("check " + name + " failed" + (detail.empty() ? "" : ": " + detail));
  checks.push_back({std::move(name), pass, std::move(detail)});
}

const Check* Report::find_check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string join_ids(const std::vector<Identity>& ids, std::size_t limit = 5) {
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i) s += ",";
    s += ids[i].value();
  }
  if (ids.size() > limit) s += ",...";
  return s;
}

}  // namespace

void Report::compare_outputs() {
  static const std::set<Identity> kEmpty;
  std::set<Identity> keys;
  for (const auto& [id, s] : outputs) keys.insert(id);
  for (const auto& [id, s] : expected) keys.insert(id);
  for (const auto& id : keys) {
    auto o = outputs.find(id);
    auto e = expected.find(id);
    const auto& got = o == outputs.end() ? kEmpty : o->second;
    const auto& want = e == expected.end() ? kEmpty : e->second;
    if (got == want) continue;
    std::vector<Identity> missing;
    std::vector<Identity> extra;
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                        std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                        std::back_inserter(extra));
    divergences.push_back(id.value() + ": missing [" + join_ids(missing) + "] extra [" +
                          join_ids(extra) + "]");
  }
}

ordered_json Report::to_json() const {
  auto id_map = [](const std::map<Identity, std::set<Identity>>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [id, s] : m) {
      ordered_json arr = ordered_json::array();
      for (const auto& x : s) arr.push_back(x.value());
      j[id.value()] = std::move(arr);
    }
    return j;
  };
  ordered_json j;
  j["scenario"] = scenario_name(config.name);
  j["seed"] = config.seed;
  j["protocol"] = protocol_name(config.protocol);
  j["passed"] = passed();
  j["valid"] = valid;
  if (!valid) j["invalid_reason"] = invalid_reason;
  j["config"] = config.to_json();
  j["graph"] = {{"identities", n_identities},
                {"members", n_members},
                {"edges", n_edges},
                {"mutual_pairs", mutual_pairs}};
  j["server_stats"] = {{"s_c", server_stats.s_c}, {"s_mc", server_stats.s_mc}};
  j["oracle_stats"] = {{"s_c", oracle_stats.s_c}, {"s_mc", oracle_stats.s_mc}};
  j["transcript"] = {{"messages", transcript.messages},
                     {"bytes", transcript.bytes},
                     {"connections", transcript.connections}};
  ordered_json cj = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    cj.push_back(std::move(e));
  }
  j["checks"] = std::move(cj);
  j["divergences"] = divergences;
  ordered_json mj = ordered_json::object();
  for (const auto& [k, v] : metrics) mj[k] = v;
  j["metrics"] = std::move(mj);
  j["elapsed_ms"] = elapsed_ms;
  j["outputs"] = id_map(outputs);
  j["expected"] = id_map(expected);
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class TempDir {
 public:
  explicit TempDir(const std::optional<fs::path>& base) {
    fs::path root = base.value_or(fs::temp_directory_path());
    fs::create_directories(root);
    std::string pattern = (root / "mcd-sim-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) {
      throw std::system_error(errno, std::generic_category(), "mkdtemp");
    }
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class ForwardHandler final : public LineHandler {
 public:
  void set(LineHandler* h) { target_.store(h); }
  std::string handle(std::string_view line) override { return target_.load()->handle(line); }

 private:
  std::atomic<LineHandler*> target_{nullptr};
};

// Serves one handler either on a unix socket or in process. The transport
// stays valid across restarts.
class ServiceHost {
 public:
  ServiceHost(const ScenarioConfig& cfg, const fs::path& dir, const std::string& name,
              LineHandler& handler)
      : kind_(cfg.transport) {
    forward_.set(&handler);
    if (kind_ == TransportKind::kSocket) {
      endpoint_ = Endpoint::parse("unix:" + (dir / (name + ".sock")).string());
      options_.workers = std::max<std::size_t>(1, cfg.server_workers);
      options_.rate_limit = cfg.rate_limit;
      start_server();
      transport_ = std::make_unique<SocketTransport>(endpoint_);
    } else {
      transport_ = std::make_unique<InProcessTransport>(forward_);
    }
  }
  ~ServiceHost() { stop(); }
  ServiceHost(const ServiceHost&) = delete;
  ServiceHost& operator=(const ServiceHost&) = delete;

  Transport& transport() { return *transport_; }
  bool socket() const { return kind_ == TransportKind::kSocket; }

  void stop() {
    if (!server_) return;
    server_->stop();
    served_ += server_->served();
    server_.reset();
  }

  void restart(LineHandler& handler) {
    stop();
    forward_.set(&handler);
    if (kind_ == TransportKind::kSocket) start_server();
  }

  std::uint64_t served() const { return served_ + (server_ ? server_->served() : 0); }

 private:
  void start_server() {
    server_ = std::make_unique<LineServer>(endpoint_, forward_, options_);
    server_->start();
  }

  TransportKind kind_;
  Endpoint endpoint_;
  LineServerOptions options_;
  ForwardHandler forward_;
  std::unique_ptr<LineServer> server_;
  std::unique_ptr<Transport> transport_;
  std::uint64_t served_ = 0;
};

// Runs tasks on a pool in an order fixed by the seed and rethrows the first
// failure after all workers have joined.
void run_actors(std::vector<std::function<void()>> tasks, std::size_t threads,
                std::uint64_t order_seed) {
  std::mt19937_64 rng(order_seed);
  std::shuffle(tasks.begin(), tasks.end(), rng);
  threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t sub_seed(std::uint64_t seed, std::string_view label) {
  Bytes in = to_bytes(label);
  append_u32_be(in, static_cast<std::uint32_t>(seed >> 32));
  append_u32_be(in, static_cast<std::uint32_t>(seed));
  Digest d = sha256({in});
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

ServerStats brute_force_stats(const std::vector<TuplePair>& tuples) {
  ServerStats s;
  s.s_c = tuples.size();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      if (i != j && tuples[i].first == tuples[j].first && tuples[i].second != tuples[j].second) {
        ++s.s_mc;
      }
    }
  }
  return s;
}

std::string stats_str(const ServerStats& s) {
  return "s_c=" + std::to_string(s.s_c) + " s_mc=" + std::to_string(s.s_mc);
}

bool hex64(const json& v) {
  return v.is_string() && is_lower_hex(v.get<std::string>(), AugmentedToken::kHexChars);
}

// Empty when every message carries only op names, hex64 strings and counts.
std::string transcript_problem(const std::vector<TranscriptEntry>& entries) {
  static const std::set<std::string> kOps = {"submit", "query", "delete", "stats",
                                             "advance_phase"};
  auto alphabet_ok = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '{' ||
             c == '}' || c == '[' || c == ']' || c == '"' || c == ':' || c == ',';
    });
  };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string where = "message " + std::to_string(i) + ": ";
    if (!alphabet_ok(e.request) || !alphabet_ok(e.response)) return where + "unexpected characters";
    json req = json::parse(e.request, nullptr, false);
    if (!req.is_object() || !req.contains("op") || !req["op"].is_string() ||
        !kOps.contains(req["op"].get<std::string>())) {
      return where + "bad request op";
    }
    for (const auto& [k, v] : req.items()) {
      if (k == "op") continue;
      if ((k != "t1" && k != "t2") || !hex64(v)) return where + "bad request field " + k;
    }
    json resp = json::parse(e.response, nullptr, false);
    if (!resp.is_object() || resp.empty()) return where + "bad response";
    for (const auto& [k, v] : resp.items()) {
      bool ok = false;
      if (k == "ok") ok = v.is_boolean();
      if (k == "err") ok = v.is_string();
      if (k == "s_c" || k == "s_mc") ok = v.is_number_unsigned();
      if (k == "matches") {
        ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& t) {
               return t.is_array() && t.size() == 2 && hex64(t[0]) && hex64(t[1]);
             });
      }
      if (!ok) return where + "bad response field " + k;
    }
  }
  return {};
}

struct Actor {
  Identity id;
  ContactList contacts;
  DiscoveryMember* member = nullptr;
};

using OutputMap = std::map<Identity, std::set<Identity>>;

// One deployment: servers, hosts and member state for a single protocol run.
class Simulation {
 public:
  using Wrapper = std::function<std::unique_ptr<LineHandler>(MatchingServer&)>;

  Simulation(const ScenarioConfig& cfg, const SocialGraph& graph, const fs::path& dir,
             Protocol protocol, ServerMode mode, std::string tag = {}, Wrapper wrap = {})
      : cfg_(cfg),
        graph_(graph),
        dir_(dir),
        protocol_(protocol),
        tag_(std::move(tag)),
        order_rng_(sub_seed(cfg.effective_order_seed(), "order" + tag_)),
        setup_rng_(sub_seed(cfg.seed, "setup")) {
    suite_ = cfg.transparent_suite ? SuitePtr(make_transparent_suite()) : production_suite();
    points_ = std::make_shared<PointCache>(suite_);
    kdf_.cost = cfg.kdf_cost;
    if (kdf_.cost >= KdfParams::kMinDemoCost) kdf_.profile = KdfProfile::kDemo;

    match_options_.mode = mode;
    match_options_.variant = protocol == Protocol::kSimple ? ServerVariant::kSimple
                                                           : ServerVariant::kMain;
    match_options_.pad_responses = cfg.pad_responses;
    if (cfg.restart_server) {
      if (wrap) throw Error(Errc::kInvalidArgument, "restart_server is not supported with a wrapper");
      match_options_.log_path = dir_ / (tag_ + "match.log");
    }
    match_ = std::make_unique<MatchingServer>(match_options_);
    if (wrap) wrapper_ = wrap(*match_);
    match_host_ = std::make_unique<ServiceHost>(cfg, dir_, tag_ + "match",
                                                wrapper_ ? *wrapper_ : *match_);
    recorder_ = std::make_unique<RecordingTransport>(match_host_->transport(), transcript_);

    switch (protocol_) {
      case Protocol::kMain: setup_main(); break;
      case Protocol::kKeyServer: setup_keyserver(); break;
      case Protocol::kSimple: break;
    }
    for (const auto& m : graph_.members) {
      actors_.push_back({m, graph_.contact_list(m), member_or_null(m)});
    }
  }

  ~Simulation() {
    match_host_.reset();
    key_host_.reset();
  }

  const SuitePtr& suite() const { return suite_; }
  const std::shared_ptr<PointCache>& points() const { return points_; }
  const SystemParams& params() const { return authority_->params(); }
  const EnrollmentRegistry& enrollment() const {
    return protocol_ == Protocol::kKeyServer ? key_enrollment_ : authority_->enrollment();
  }
  const KdfParams& kdf_params() const { return kdf_; }
  Transport& match_transport() { return *recorder_; }
  Transport& raw_match_transport() { return match_host_->transport(); }
  Transport& key_transport() { return key_host_->transport(); }
  MatchingServer& match_server() { return *match_; }
  KeyServer& key_server() { return *key_server_; }
  const SuitePtr& dh() const { return dh_; }
  Transcript& transcript() { return transcript_; }
  DiscoveryMember& member(const Identity& id) { return *members_.at(id); }
  std::vector<Actor>& actors() { return actors_; }
  std::mt19937_64& order_rng() { return order_rng_; }
  Rng& setup_rng() { return setup_rng_; }

  TranscriptStats transcript_stats() const {
    return {transcript_.messages(), transcript_.bytes(),
            static_cast<std::size_t>(match_host_->socket() ? match_host_->served()
                                                            : transcript_.messages())};
  }

  // Adds a participant that is not part of the graph (an attacker).
  void add_actor(std::unique_ptr<DiscoveryMember> m) {
    DiscoveryMember* raw = m.get();
    extras_.push_back(std::move(m));
    actors_.push_back({raw->identity(), raw->contacts(), raw});
  }

  void submission(const std::vector<Actor*>& who, bool restart_midway, Report* report) {
    std::vector<Actor*> order = who;
    std::shuffle(order.begin(), order.end(), order_rng_);
    const std::size_t half = restart_midway ? order.size() / 2 : order.size();
    submit_batch({order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half)});
    if (restart_midway) {
      restart_match(report);
      submit_batch({order.begin() + static_cast<std::ptrdiff_t>(half), order.end()});
    }
  }

  void submission(bool restart_midway, Report* report) {
    submission(all_actors(), restart_midway, report);
  }

  std::vector<Actor*> all_actors() {
    std::vector<Actor*> v;
    for (auto& a : actors_) v.push_back(&a);
    return v;
  }

  void advance() { MatchClient(*recorder_).advance_phase(); }

  std::map<Actor*, DiscoveryOutput> query(const std::vector<Actor*>& who) {
    std::map<Actor*, DiscoveryOutput> out;
    for (Actor* a : who) out[a];
    std::vector<std::function<void()>> tasks;
    for (Actor* a : who) {
      DiscoveryOutput* slot = &out[a];
      tasks.push_back([this, a, slot] {
        MatchClient client(*recorder_);
        *slot = a->member ? query_all(*a->member, client)
                          : simple_query_all(a->id, a->contacts, client, kdf_);
      });
    }
    run_actors(std::move(tasks), cfg_.actors, order_rng_());
    return out;
  }

  // Outputs of the graph members only.
  OutputMap query_members() {
    std::vector<Actor*> who;
    for (std::size_t i = 0; i < graph_.members.size(); ++i) who.push_back(&actors_[i]);
    auto res = query(who);
    OutputMap out;
    for (auto& [a, o] : res) {
      if (o.incomplete) throw Error(Errc::kTransport, "query phase incomplete for " + a->id.value());
      out[a->id] = o.discovered;
    }
    return out;
  }

  ServerStats stats() { return MatchClient(*recorder_).stats(); }

  // Stops the matching server, rebuilds it from its log and checks that the
  // rebuilt state equals the state before the stop.
  void restart_match(Report* report) {
    match_host_->stop();
    TupleStore before = match_->snapshot();
    const Phase phase = match_->phase();
    const std::size_t simple = match_->simple_size();
    match_.reset();
    match_ = std::make_unique<MatchingServer>(match_options_);
    const bool same = match_->snapshot() == before && match_->phase() == phase &&
                      match_->simple_size() == simple;
    ++restarts_;
    if (report) {
      report->check("restart_restores_state", same,
                    "tuples=" + std::to_string(before.size()) + " simple=" + std::to_string(simple));
    }
    match_host_->restart(*match_);
  }

  std::size_t restarts() const { return restarts_; }

 private:
  DiscoveryMember* member_or_null(const Identity& id) {
    auto it = members_.find(id);
    return it == members_.end() ? nullptr : it->second.get();
  }

  void submit_batch(const std::vector<Actor*>& who) {
    std::vector<std::function<void()>> tasks;
    for (Actor* a : who) {
      tasks.push_back([this, a] {
        MatchClient client(*recorder_);
        const bool complete = a->member ? submit_all(*a->member, client)
                                        : simple_submit_all(a->id, a->contacts, client, kdf_);
        if (!complete) throw Error(Errc::kTransport, "submission incomplete for " + a->id.value());
      });
    }
    run_actors(std::move(tasks), cfg_.actors, order_rng_());
  }

  void setup_main() {
    Bytes seed = setup_rng_.bytes(32);
    authority_.emplace(Authority::setup(SecurityProfile::kTest, seed, suite_));
    std::vector<Certificate> certs;
    for (const auto& m : graph_.members) {
      Digest secret = authority_->enrollment().secret_for(m);
      Digest proof = EnrollmentRegistry::make_proof(secret, EnrollmentRegistry::kIssue, m);
      certs.push_back(authority_->issue_certificate(m, proof));
    }
    authority_->erase_master();
    for (const auto& m : graph_.members) members_[m];
    std::vector<std::function<void()>> tasks;
    for (auto& cert : certs) {
      tasks.push_back([this, &cert] {
        auto member = std::make_unique<MemberState>(authority_->params(), cert,
                                                    graph_.contact_list(cert.identity), points_);
        members_.at(cert.identity) = std::move(member);
      });
    }
    run_actors(std::move(tasks), cfg_.actors, order_rng_());
  }

  void setup_keyserver() {
    dh_ = make_dh_group(suite_);
    key_enrollment_ = EnrollmentRegistry::generate(setup_rng_);
    key_server_ = std::make_unique<KeyServer>(dh_, setup_rng_.bytes(KeyServer::kPhantomSecretBytes),
                                              key_enrollment_);
    key_host_ = std::make_unique<ServiceHost>(cfg_, dir_, tag_ + "keys", *key_server_);
    KeyServerClient client(key_host_->transport(), dh_);
    for (const auto& m : graph_.members) {
      DhKeyPair keys = DhKeyPair::generate(*dh_, setup_rng_);
      Digest secret = key_enrollment_.secret_for(m);
      client.enroll(m, keys.pk,
                    EnrollmentRegistry::make_proof(secret, EnrollmentRegistry::kKeyServerEnroll, m));
      members_[m] = std::make_unique<KeyServerMember>(m, graph_.contact_list(m), keys, dh_,
                                                      key_host_->transport(), points_);
    }
  }

  const ScenarioConfig& cfg_;
  const SocialGraph& graph_;
  fs::path dir_;
  Protocol protocol_;
  std::string tag_;
  std::mt19937_64 order_rng_;
  SeededRng setup_rng_;
  SuitePtr suite_;
  std::shared_ptr<PointCache> points_;
  KdfParams kdf_;
  MatchingServerOptions match_options_;
  std::unique_ptr<MatchingServer> match_;
  std::unique_ptr<LineHandler> wrapper_;
  std::unique_ptr<ServiceHost> match_host_;
  Transcript transcript_;
  std::unique_ptr<RecordingTransport> recorder_;
  std::optional<Authority> authority_;
  SuitePtr dh_;
  EnrollmentRegistry key_enrollment_;
  std::unique_ptr<KeyServer> key_server_;
  std::unique_ptr<ServiceHost> key_host_;
  std::map<Identity, std::unique_ptr<DiscoveryMember>> members_;
  std::vector<std::unique_ptr<DiscoveryMember>> extras_;
  std::vector<Actor> actors_;
  std::size_t restarts_ = 0;
};

struct Ctx {
  const ScenarioConfig& cfg;
  const SocialGraph& graph;
  const OracleResult& oracle;
  Report& r;
  const fs::path& dir;
};

std::size_t count_missing(const OutputMap& want, const OutputMap& got) {
  std::size_t n = 0;
  for (const auto& [id, w] : want) {
    auto it = got.find(id);
    for (const auto& x : w) {
      if (it == got.end() || !it->second.contains(x)) ++n;
    }
  }
  return n;
}

void common_checks(Ctx& c, Simulation& sim, Protocol protocol) {
  const ServerStats st = sim.stats();
  c.r.server_stats = st;
  c.r.check("server_counts", st == c.r.oracle_stats,
            "server " + stats_str(st) + ", expected " + stats_str(c.r.oracle_stats));
  if (protocol != Protocol::kSimple) {
    const ServerStats brute = brute_force_stats(sim.match_server().snapshot().all());
    c.r.check("server_counts_brute_force", brute == st, "recount " + stats_str(brute));
    const std::string problem = transcript_problem(sim.transcript().entries());
    c.r.check("transcript_hygiene", problem.empty(), problem);
  }
  c.r.transcript = sim.transcript_stats();
  c.r.check("connection_per_message", c.r.transcript.connections == c.r.transcript.messages,
            std::to_string(c.r.transcript.connections) + " connections for " +
                std::to_string(c.r.transcript.messages) + " messages");
}

OutputMap run_static_phases(Ctx& c, Simulation& sim) {
  auto t0 = Clock::now();
  sim.submission(c.cfg.restart_server, &c.r);
  c.r.metrics["submission_ms"] = ms_since(t0);
  sim.advance();
  t0 = Clock::now();
  OutputMap out = sim.query_members();
  c.r.metrics["query_ms"] = ms_since(t0);
  return out;
}

void hiding_checks(Ctx& c) {
  std::size_t pairs = 0;
  std::size_t hider_ok = 0;
  std::size_t partner_ok = 0;
  std::size_t both = 0;
  std::size_t both_ok = 0;
  for (const auto& [hider, marks] : c.graph.hidden_marks) {
    for (const auto& p : marks) {
      if (!c.graph.is_member(p) || !c.graph.has_edge(p, hider)) continue;
      if (c.graph.hides(p, hider)) {
        ++both;
        both_ok += !c.r.outputs[hider].contains(p);
        continue;
      }
      ++pairs;
      if (c.r.outputs[hider].contains(p)) ++hider_ok;
      if (!c.r.outputs[p].contains(hider)) ++partner_ok;
    }
  }
  const std::string detail = std::to_string(pairs) + " one-sided hidden mutual pairs";
  c.r.check("hidden_mutual_pairs_present", pairs > 0, detail);
  c.r.check("hider_discovers_partners", hider_ok == pairs, std::to_string(hider_ok) + "/" + detail);
  c.r.check("partner_never_discovers_hider", partner_ok == pairs,
            std::to_string(partner_ok) + "/" + detail);
  c.r.check("two_sided_hiders_discover_nothing", both_ok == both,
            std::to_string(both_ok) + "/" + std::to_string(both) + " directions");
}

bool scenario_static(Ctx& c) {
  Simulation sim(c.cfg, c.graph, c.dir, c.cfg.protocol, ServerMode::kStatic);
  c.r.outputs = run_static_phases(c, sim);
  common_checks(c, sim, c.cfg.protocol);
  if (c.cfg.name == ScenarioName::kHidingMember) hiding_checks(c);
  return true;
}

bool scenario_dynamic(Ctx& c) {
  if (c.cfg.protocol == Protocol::kSimple) {
    throw Error(Errc::kInvalidArgument, "dynamic mode needs the main or keyserver protocol");
  }
  Simulation sim(c.cfg, c.graph, c.dir, c.cfg.protocol, ServerMode::kDynamic);
  const auto& g = c.graph;
  std::vector<Identity> order(g.members.begin(), g.members.end());
  std::shuffle(order.begin(), order.end(), sim.order_rng());
  std::map<Identity, std::size_t> join;
  for (std::size_t i = 0; i < order.size(); ++i) join[order[i]] = i;

  std::vector<std::pair<Identity, Identity>> candidates;
  for (const auto& d : g.members) {
    for (const auto& j : g.contacts(d)) {
      if (g.is_member(j) && g.has_edge(j, d) && !g.hides(d, j) && !g.hides(j, d) &&
          join[d] < join[j]) {
        candidates.emplace_back(d, j);
      }
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), sim.order_rng());
  std::map<Identity, Identity> deletes;
  std::set<Identity> used;
  for (const auto& [d, j] : candidates) {
    if (deletes.size() >= c.cfg.deletions) break;
    if (used.contains(d) || used.contains(j)) continue;
    deletes.emplace(d, j);
    used.insert(d);
    used.insert(j);
  }

  using Results = std::map<Identity, std::map<Identity, bool>>;
  Results first;
  Results requery;
  Transport& t = sim.match_transport();
  auto t0 = Clock::now();
  for (std::size_t k = 0; k < order.size(); ++k) {
    DiscoveryMember& m = sim.member(order[k]);
    for (const auto& x : m.contacts().all()) first[m.identity()][x] = run_dynamic_step(m, x, t);
    if (auto it = deletes.find(m.identity()); it != deletes.end()) delete_contact(m, it->second, t);
    if (c.cfg.restart_server && k + 1 == order.size() / 2) sim.restart_match(&c.r);
  }
  c.r.metrics["join_ms"] = ms_since(t0);

  for (const auto& m : g.members) requery[m];
  std::vector<std::function<void()>> tasks;
  for (const auto& id : g.members) {
    tasks.push_back([&, id] {
      DiscoveryMember& m = sim.member(id);
      auto skip = deletes.find(id);
      for (const auto& x : m.contacts().all()) {
        if (skip != deletes.end() && skip->second == x) continue;
        requery.at(id)[x] = run_dynamic_step(m, x, t);
      }
    });
  }
  t0 = Clock::now();
  run_actors(std::move(tasks), c.cfg.actors, sim.order_rng()());
  c.r.metrics["requery_ms"] = ms_since(t0);

  for (const auto& m : g.members) c.r.outputs[m] = sim.member(m).discovered();
  for (const auto& [d, j] : deletes) {
    c.r.expected[d].erase(j);
    c.r.expected[j].erase(d);
  }
  c.r.oracle_stats.s_c -= deletes.size();
  c.r.oracle_stats.s_mc -= 2 * deletes.size();

  auto lookup = [](const Results& r, const Identity& a, const Identity& b) {
    auto it = r.find(a);
    if (it == r.end()) return false;
    auto jt = it->second.find(b);
    return jt != it->second.end() && jt->second;
  };
  std::size_t pairs = 0;
  std::size_t later_ok = 0;
  std::size_t earlier_first_ok = 0;
  std::size_t earlier_requery_ok = 0;
  for (const auto& a : g.members) {
    for (const auto& b : g.contacts(a)) {
      if (!(a < b) || !g.is_member(b) || !g.has_edge(b, a) || g.hides(a, b) || g.hides(b, a)) {
        continue;
      }
      if ((deletes.contains(a) && deletes.at(a) == b) || (deletes.contains(b) && deletes.at(b) == a)) {
        continue;
      }
      const Identity& early = join[a] < join[b] ? a : b;
      const Identity& late = join[a] < join[b] ? b : a;
      ++pairs;
      if (lookup(first, late, early)) ++later_ok;
      if (!lookup(first, early, late)) ++earlier_first_ok;
      if (lookup(requery, early, late)) ++earlier_requery_ok;
    }
  }
  const std::string of = "/" + std::to_string(pairs) + " mutual pairs";
  c.r.check("mutual_pairs_present", pairs > 0, std::to_string(pairs) + " mutual pairs");
  c.r.check("later_discovers_on_first_query", later_ok == pairs, std::to_string(later_ok) + of);
  c.r.check("earlier_misses_on_first_query", earlier_first_ok == pairs,
            std::to_string(earlier_first_ok) + of);
  c.r.check("earlier_discovers_on_requery", earlier_requery_ok == pairs,
            std::to_string(earlier_requery_ok) + of);

  std::size_t deleted_ok = 0;
  for (const auto& [d, j] : deletes) {
    if (!lookup(first, j, d) && !lookup(requery, j, d) && !c.r.outputs[j].contains(d)) ++deleted_ok;
  }
  c.r.check("deletions_performed", deletes.size() == c.cfg.deletions,
            std::to_string(deletes.size()) + " of " + std::to_string(c.cfg.deletions));
  c.r.check("deleted_contact_never_discovered", deleted_ok == deletes.size(),
            std::to_string(deleted_ok) + "/" + std::to_string(deletes.size()));
  c.r.metrics["deletions"] = static_cast<double>(deletes.size());
  common_checks(c, sim, c.cfg.protocol);
  return true;
}

bool scenario_malicious(Ctx& c) {
  MaliciousOptions mo;
  const std::size_t queries = c.oracle.s_c;
  mo.inject_random = c.cfg.inject_tuples / 2;
  mo.inject_grafted = c.cfg.inject_tuples - mo.inject_random;
  const std::size_t larger = std::max(mo.inject_random, mo.inject_grafted);
  mo.per_response = queries == 0 ? 0 : (larger + queries - 1) / queries;
  mo.drop_responses = c.cfg.drop_responses;
  mo.seed = sub_seed(c.cfg.seed, "adversary");
  MaliciousMatchHandler* adversary = nullptr;
  Simulation sim(c.cfg, c.graph, c.dir, c.cfg.protocol, ServerMode::kStatic, {},
                 [&](MatchingServer& s) {
                   auto h = std::make_unique<MaliciousMatchHandler>(s, mo);
                   adversary = h.get();
                   return h;
                 });
  c.r.outputs = run_static_phases(c, sim);
  const MaliciousCounters k = adversary->counters();
  const std::size_t false_found = count_missing(c.r.outputs, c.r.expected);
  const std::size_t missed = count_missing(c.r.expected, c.r.outputs);
  c.r.metrics["injected_random"] = static_cast<double>(k.injected_random);
  c.r.metrics["injected_grafted"] = static_cast<double>(k.injected_grafted);
  c.r.metrics["replayed"] = static_cast<double>(k.replayed);
  c.r.metrics["dropped"] = static_cast<double>(k.dropped);
  c.r.metrics["false_discoveries"] = static_cast<double>(false_found);
  c.r.metrics["missed_discoveries"] = static_cast<double>(missed);
  c.r.check("injected_tuples", k.injected_random + k.injected_grafted == c.cfg.inject_tuples,
            std::to_string(k.injected_random) + " random + " + std::to_string(k.injected_grafted) +
                " grafted");
  c.r.check("zero_false_discoveries", false_found == 0, std::to_string(false_found));
  if (!c.cfg.pad_responses) {
    c.r.check("missed_equals_dropped", missed == k.dropped,
              std::to_string(missed) + " missed, " + std::to_string(k.dropped) + " dropped");
  }
  common_checks(c, sim, c.cfg.protocol);
  // Dropped responses legitimately remove discoveries; the checks above
  // account for them exactly.
  return k.dropped == 0;
}

bool scenario_guessing(Ctx& c) {
  if (c.cfg.protocol != Protocol::kMain) {
    throw Error(Errc::kInvalidArgument, "guessing_attacker targets the main protocol");
  }
  Simulation sim(c.cfg, c.graph, c.dir, Protocol::kMain, ServerMode::kStatic);
  SeededRng rng(sub_seed(c.cfg.seed, "attacker"));
  const GroupSuite& suite = *sim.suite();
  const std::vector<Identity> members(c.graph.members.begin(), c.graph.members.end());
  bool rejected = true;
  std::size_t attacker_contacts = 0;
  for (std::size_t i = 0; i < c.cfg.attackers; ++i) {
    // Even slots use fresh identities, odd slots impersonate a member.
    Identity x = (i % 2 == 0 || members.empty())
                     ? sim_identity(c.graph.identities.size() + i)
                     : members[rng.next_u64() % members.size()];
    Scalar guess = suite.random_scalar(rng);
    Certificate forged{x, suite.mul(sim.points()->get(x, Slot::kSlot1), guess),
                       suite.mul(sim.points()->get(x, Slot::kSlot2), guess)};
    rejected = rejected && !verify_certificate(sim.params(), forged);
    std::set<Identity> contacts(c.graph.members.begin(), c.graph.members.end());
    contacts.erase(x);
    attacker_contacts += contacts.size();
    sim.add_actor(std::make_unique<MemberState>(sim.params(), forged,
                                                ContactList(x, std::move(contacts), {}),
                                                sim.points(), false));
  }
  c.r.check("forged_certificates_rejected", rejected);
  sim.submission(c.cfg.restart_server, &c.r);
  sim.advance();
  auto results = sim.query(sim.all_actors());
  std::size_t attacker_found = 0;
  std::size_t index = 0;
  for (auto& a : sim.actors()) {
    const DiscoveryOutput& o = results.at(&a);
    if (o.incomplete) throw Error(Errc::kTransport, "query phase incomplete");
    if (index++ < c.graph.members.size()) {
      c.r.outputs[a.id] = o.discovered;
    } else {
      attacker_found += o.discovered.size();
    }
  }
  c.r.metrics["attackers"] = static_cast<double>(c.cfg.attackers);
  c.r.metrics["attacker_discoveries"] = static_cast<double>(attacker_found);
  c.r.check("attackers_discover_nothing", attacker_found == 0,
            std::to_string(attacker_found) + " discoveries");
  c.r.oracle_stats.s_c += attacker_contacts;
  common_checks(c, sim, Protocol::kMain);
  return true;
}

std::string op_of(const std::string& line) { return peek_op(line).value_or(""); }

bool scenario_replay(Ctx& c) {
  Simulation sim(c.cfg, c.graph, c.dir, c.cfg.protocol, ServerMode::kStatic);
  const bool simple = c.cfg.protocol == Protocol::kSimple;
  const std::string submit_op = simple ? "simple_submit" : "submit";
  const std::string query_op = simple ? "simple_query" : "query";
  sim.submission(c.cfg.restart_server, &c.r);

  std::vector<std::string> submits;
  for (const auto& e : sim.transcript().entries()) {
    if (op_of(e.request) == submit_op) submits.push_back(e.request);
  }
  Transport& t = sim.match_transport();
  const ServerStats before = sim.stats();
  std::size_t accepted = 0;
  for (const auto& line : submits) accepted += t.round_trip(line) == encode_ok();
  const ServerStats after = sim.stats();
  c.r.check("replayed_submissions_idempotent", accepted == submits.size() && before == after,
            std::to_string(submits.size()) + " replayed, " + stats_str(after));

  sim.advance();
  const std::size_t mark = sim.transcript().messages();
  OutputMap first = sim.query_members();
  std::vector<TranscriptEntry> queries;
  auto entries = sim.transcript().entries();
  for (std::size_t i = mark; i < entries.size(); ++i) {
    if (op_of(entries[i].request) == query_op) queries.push_back(entries[i]);
  }
  std::size_t identical = 0;
  for (const auto& e : queries) identical += t.round_trip(e.request) == e.response;
  if (!c.cfg.pad_responses) {
    c.r.check("replayed_queries_identical", identical == queries.size(),
              std::to_string(identical) + "/" + std::to_string(queries.size()));
  }
  std::size_t refused = 0;
  for (const auto& line : submits) refused += t.round_trip(line) == encode_error(Errc::kPhase);
  c.r.check("replayed_submissions_refused_after_advance", refused == submits.size(),
            std::to_string(refused) + "/" + std::to_string(submits.size()));
  c.r.check("replay_changes_no_state", sim.stats() == before);
  OutputMap second = sim.query_members();
  c.r.check("outputs_unchanged_after_replay", first == second);
  c.r.outputs = std::move(first);
  c.r.metrics["replayed_messages"] = static_cast<double>(2 * submits.size() + queries.size());
  common_checks(c, sim, c.cfg.protocol);
  return true;
}

bool scenario_simple_weakness(Ctx& c) {
  Simulation sim(c.cfg, c.graph, c.dir, Protocol::kSimple, ServerMode::kStatic);
  c.r.outputs = run_static_phases(c, sim);
  std::size_t edges = 0;
  std::size_t hits = 0;
  std::size_t non_edges = 0;
  std::size_t false_hits = 0;
  Transport& t = sim.match_transport();
  for (const auto& a : c.graph.identities) {
    for (const auto& b : c.graph.identities) {
      if (a == b) continue;
      // The probe asks whether b has submitted a for the visible form.
      const bool truth = c.graph.is_member(b) && c.graph.has_edge(b, a) && !c.graph.hides(b, a);
      const bool hit = attack_contact_probe(a, b, t, sim.kdf_params());
      if (truth) {
        ++edges;
        hits += hit;
      } else {
        ++non_edges;
        false_hits += hit;
      }
    }
  }
  c.r.metrics["probes"] = static_cast<double>(edges + non_edges);
  c.r.metrics["probe_true_edges"] = static_cast<double>(edges);
  c.r.metrics["probe_hits"] = static_cast<double>(hits);
  c.r.metrics["probe_false_hits"] = static_cast<double>(false_hits);
  c.r.check("probe_detects_every_edge", edges > 0 && hits == edges,
            std::to_string(hits) + "/" + std::to_string(edges));
  c.r.check("probe_silent_on_non_edges", false_hits == 0,
            std::to_string(false_hits) + "/" + std::to_string(non_edges));
  common_checks(c, sim, Protocol::kSimple);
  return true;
}

std::string key_request(const Identity& id) {
  return encode_request(KeyRequest{KeyRequest::Op::kGetKey, id.value(), {}, {}});
}

bool scenario_keyserver_run(Ctx& c) {
  Simulation sim(c.cfg, c.graph, c.dir, Protocol::kKeyServer, ServerMode::kStatic);
  c.r.outputs = run_static_phases(c, sim);
  common_checks(c, sim, Protocol::kKeyServer);

  if (c.cfg.compare_main) {
    auto t0 = Clock::now();
    Simulation main(c.cfg, c.graph, c.dir, Protocol::kMain, ServerMode::kStatic, "main-");
    main.submission(false, nullptr);
    main.advance();
    OutputMap main_out = main.query_members();
    const std::size_t differ = count_missing(main_out, c.r.outputs) + count_missing(c.r.outputs, main_out);
    c.r.check("matches_main_protocol", differ == 0, std::to_string(differ) + " differing entries");
    c.r.metrics["main_run_ms"] = ms_since(t0);
  }

  Transport& kt = sim.key_transport();
  std::vector<Identity> phantoms;
  for (const auto& id : c.graph.identities) {
    if (phantoms.size() >= c.cfg.phantom_identities) break;
    if (!c.graph.is_member(id)) phantoms.push_back(id);
  }
  bool consistent = !phantoms.empty();
  std::string phantom_response;
  for (const auto& u : phantoms) {
    const std::string first = kt.round_trip(key_request(u));
    Bytes raw = decode_key(first);
    consistent = consistent && !sim.dh()->is_identity(sim.dh()->decode_point(Slot::kSlot1, raw));
    for (std::size_t i = 1; i < c.cfg.phantom_fetches; ++i) consistent = consistent && kt.round_trip(key_request(u)) == first;
    if (phantom_response.empty()) phantom_response = first;
  }
  c.r.check("phantom_keys_consistent", consistent,
            std::to_string(phantoms.size()) + " identities x " +
                std::to_string(c.cfg.phantom_fetches) + " fetches");

  bool shape = false;
  if (!c.graph.members.empty() && !phantom_response.empty()) {
    const std::string enrolled = kt.round_trip(key_request(*c.graph.members.begin()));
    json a = json::parse(enrolled);
    json b = json::parse(phantom_response);
    shape = enrolled.size() == phantom_response.size() && a.size() == 1 && b.size() == 1 &&
            a.begin().key() == b.begin().key();
  }
  c.r.check("uniform_response_shape", shape);

  auto total_fetches = [&] {
    std::uint64_t n = 0;
    for (const auto& [id, k] : sim.key_server().fetch_counts()) n += k;
    return n;
  };
  const Identity lonely = sim_identity(c.graph.identities.size());
  DhKeyPair keys = DhKeyPair::generate(*sim.dh(), sim.setup_rng());
  KeyServerClient(kt, sim.dh())
      .enroll(lonely, keys.pk,
              EnrollmentRegistry::make_proof(sim.enrollment().secret_for(lonely),
                                             EnrollmentRegistry::kKeyServerEnroll, lonely));
  const std::uint64_t before = total_fetches();
  KeyServerMember m(lonely, ContactList(), keys, sim.dh(), kt, sim.points());
  MatchClient client(sim.match_transport());
  submit_all(m, client);
  DiscoveryOutput none = query_all(m, client);
  c.r.check("no_fetches_without_contacts",
            m.key_fetches() == 0 && total_fetches() == before && none.discovered.empty());
  return true;
}

bool scenario_collusion(Ctx& c) {
  Simulation sim(c.cfg, c.graph, c.dir, Protocol::kKeyServer, ServerMode::kStatic);
  sim.submission(c.cfg.restart_server, &c.r);

  // The key server hands the matching server its phantom scalars for every
  // fetched identity it has no enrollment for.
  KeyServer& ks = sim.key_server();
  const GroupSuite& dh = *sim.dh();
  std::vector<Identity> targets;
  for (const auto& [id, n] : ks.fetch_counts()) {
    if (!ks.enrolled(id)) targets.push_back(id);
  }
  std::map<Identity, SourcePoint> member_keys;
  for (const auto& m : c.graph.members) member_keys.emplace(m, ks.get_key(m));
  std::size_t forged = 0;
  auto t0 = Clock::now();
  for (const auto& u : targets) {
    const Scalar x = ks.phantom_scalar(u);
    const SourcePoint qu = sim.points()->get(u, Slot::kSlot1);
    for (const auto& [m, pk] : member_keys) {
      const Bytes token = dh.mul(pk, x).encoding;
      const SourcePoint qm = sim.points()->get(m, Slot::kSlot1);
      sim.match_server().submit({ordered_h2(token, qu, qm), ordered_h2(token, qm, qm)});
      ++forged;
    }
  }
  c.r.metrics["forge_ms"] = ms_since(t0);
  sim.advance();
  c.r.outputs = sim.query_members();

  std::size_t targeted = 0;
  std::size_t demonstrated = 0;
  for (const auto& m : c.graph.members) {
    for (const auto& u : c.graph.contacts(m)) {
      if (c.graph.is_member(u)) continue;
      ++targeted;
      c.r.expected[m].insert(u);
      if (c.r.outputs[m].contains(u)) ++demonstrated;
    }
  }
  c.r.oracle_stats.s_c += forged;
  c.r.oracle_stats.s_mc += 2 * targeted;
  c.r.metrics["forged_tuples"] = static_cast<double>(forged);
  c.r.metrics["false_discoveries"] = static_cast<double>(demonstrated);
  c.r.check("collusion_forges_discoveries", targeted > 0 && demonstrated == targeted,
            std::to_string(demonstrated) + "/" + std::to_string(targeted) +
                " unenrolled contacts falsely discovered");
  common_checks(c, sim, Protocol::kKeyServer);
  return true;
}

bool scenario_directory(Ctx& c) {
  if (c.cfg.protocol == Protocol::kSimple) {
    throw Error(Errc::kInvalidArgument, "directory_e2e needs the main or keyserver protocol");
  }
  Simulation sim(c.cfg, c.graph, c.dir, c.cfg.protocol, ServerMode::kStatic);
  KeyDirectory directory(sim.enrollment());
  ServiceHost host(c.cfg, c.dir, "dir", directory);
  DirectoryClient dc(host.transport());
  SeededRng rng(sub_seed(c.cfg.seed, "directory"));
  std::map<Identity, Bytes> pubkeys;
  for (const auto& m : c.graph.members) {
    Bytes pub = rng.bytes(32);
    DiscoveryMember& member = sim.member(m);
    std::vector<AugmentedToken> gates;
    for (const auto& x : member.contacts().visible()) gates.push_back(member.directory_gate_for(x));
    dc.put(m, pub, gates,
           EnrollmentRegistry::make_proof(sim.enrollment().secret_for(m),
                                          EnrollmentRegistry::kDirectoryPut, m));
    pubkeys[m] = std::move(pub);
  }
  c.r.outputs = run_static_phases(c, sim);
  common_checks(c, sim, c.cfg.protocol);

  std::size_t pairs = 0;
  std::size_t opened = 0;
  std::size_t undiscovered = 0;
  std::size_t denied = 0;
  for (const auto& m : c.graph.members) {
    DiscoveryMember& member = sim.member(m);
    for (const auto& x : member.contacts().all()) {
      if (!c.graph.is_member(x)) continue;
      if (c.r.outputs[m].contains(x)) {
        ++pairs;
        auto key = dc.get(x, member.derive_directory_access_token(x));
        opened += key && *key == pubkeys.at(x);
      } else {
        ++undiscovered;
        denied += !dc.get(x, member.make_query(x).expected_second).has_value();
      }
    }
  }
  c.r.check("discovered_pairs_fetch_keys", pairs > 0 && opened == pairs,
            std::to_string(opened) + "/" + std::to_string(pairs));
  c.r.check("undiscovered_contacts_denied", denied == undiscovered,
            std::to_string(denied) + "/" + std::to_string(undiscovered));

  std::atomic<std::size_t> released{0};
  std::vector<std::function<void()>> tasks;
  const std::size_t chunks = std::max<std::size_t>(1, c.cfg.actors);
  for (std::size_t k = 0; k < chunks; ++k) {
    const std::size_t n = c.cfg.random_fetches / chunks + (k < c.cfg.random_fetches % chunks);
    tasks.push_back([&, k, n] {
      SeededRng local(sub_seed(c.cfg.seed, "random-fetch-" + std::to_string(k)));
      DirectoryClient client(host.transport());
      for (std::size_t i = 0; i < n; ++i) {
        const Identity& target = c.graph.identities[local.next_u64() % c.graph.identities.size()];
        if (client.get(target, AugmentedToken::random(local))) released.fetch_add(1);
      }
    });
  }
  auto t0 = Clock::now();
  run_actors(std::move(tasks), c.cfg.actors, sub_seed(c.cfg.seed, "random-order"));
  c.r.metrics["random_fetch_ms"] = ms_since(t0);
  c.r.check("random_tokens_denied", released.load() == 0,
            std::to_string(released.load()) + " of " + std::to_string(c.cfg.random_fetches) +
                " released");

  bool uniform = false;
  std::optional<Identity> absent;
  for (const auto& id : c.graph.identities) {
    if (!c.graph.is_member(id)) {
      absent = id;
      break;
    }
  }
  if (!absent) absent = sim_identity(c.graph.identities.size());
  if (!c.graph.members.empty()) {
    const AugmentedToken token = AugmentedToken::random(rng);
    auto get_line = [&](const Identity& id) {
      return host.transport().round_trip(
          encode_request(DirRequest{DirRequest::Op::kGet, id.value(), {}, {}, {}, token}));
    };
    const std::string no_record = get_line(*absent);
    const std::string bad_token = get_line(*c.graph.members.begin());
    uniform = no_record == bad_token && no_record == encode_error(Errc::kDenied);
  }
  c.r.check("uniform_denial", uniform);
  return true;
}

}  // namespace

Report run_scenario(const ScenarioConfig& config) {
  Report r;
  r.config = config;
  const auto t0 = Clock::now();
  try {
    const SocialGraph graph = gen_graph(config.graph);
    if (!graph.valid()) throw Error(Errc::kInvalidArgument, "generated graph is invalid");
    const OracleResult oracle = ideal_oracle(graph);
    r.n_identities = graph.identities.size();
    r.n_members = graph.members.size();
    r.n_edges = graph.edge_count();
    r.mutual_pairs = oracle.mutual_pairs;
    for (const auto& m : graph.members) r.expected[m] = oracle.expected.at(m);
    if (config.protocol == Protocol::kSimple) {
      std::uint64_t visible = 0;
      for (const auto& m : graph.members) visible += graph.contact_list(m).visible().size();
      r.oracle_stats = {visible, 0};
    } else {
      r.oracle_stats = {oracle.s_c, oracle.s_mc};
    }
    TempDir dir(config.work_dir);
    Ctx c{config, graph, oracle, r, dir.path()};
    bool exact = true;
    switch (config.name) {
      case ScenarioName::kHonestStatic:
      case ScenarioName::kHidingMember: exact = scenario_static(c); break;
      case ScenarioName::kHonestDynamic: exact = scenario_dynamic(c); break;
      case ScenarioName::kMaliciousServer: exact = scenario_malicious(c); break;
      case ScenarioName::kGuessingAttacker: exact = scenario_guessing(c); break;
      case ScenarioName::kReplay: exact = scenario_replay(c); break;
      case ScenarioName::kSimpleWeakness: exact = scenario_simple_weakness(c); break;
      case ScenarioName::kKeyServerRun: exact = scenario_keyserver_run(c); break;
      case ScenarioName::kKeyServerCollusion: exact = scenario_collusion(c); break;
      case ScenarioName::kDirectoryE2e: exact = scenario_directory(c); break;
    }
    if (exact) r.compare_outputs();
  } catch (const Error& e) {
    if (e.code() == Errc::kTransport) {
      r.valid = false;
      r.invalid_reason = e.what();
    } else {
      r.divergences.push_back(std::string("error: ") + e.what());
    }
  } catch (const std::system_error& e) {
    r.valid = false;
    r.invalid_reason = e.what();
  } catch (const std::exception& e) {
    r.divergences.push_back(std::string("error: ") + e.what());
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

}  // namespace mcd
