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

#include <signal.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli_config.h"
#include "mcd/authority/authority.h"
#include "mcd/client/flows.h"
#include "mcd/client/member.h"
#include "mcd/crypto/kdf.h"
#include "mcd/directory/key_directory.h"
#include "mcd/error.h"
#include "mcd/net/line_server.h"
#include "mcd/server/matching_server.h"
#include "mcd/sim/scenario.h"
#include "mcd/variants/keyserver.h"
#include "mcd/variants/simple.h"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace mcd::cli {
namespace {

struct Globals {
  std::map<std::string, std::string> flags;
  std::string config_path;
  bool json = false;
};

CliConfig resolve(const Globals& g) {
  std::optional<fs::path> path;
  if (!g.config_path.empty()) path = g.config_path;
  return CliConfig::resolve(g.flags, process_env(), load_config_file(path, process_env()));
}

void emit(const Globals& g, const ordered_json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump() << std::endl;
  } else {
    std::cout << text << std::endl;
  }
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot read " + p.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::kMalformed, p.string() + " is not valid JSON");
  return j;
}

void write_json(const fs::path& p, const ordered_json& j, bool secret = false) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  {
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw Error(Errc::kInvalidArgument, "cannot write " + p.string());
    out << j.dump(2) << "\n";
  }
  if (secret) fs::permissions(p, fs::perms::owner_read | fs::perms::owner_write);
}

std::string file_stem(const Identity& id) {
  const std::string& v = id.value();
  const bool plain = std::all_of(v.begin(), v.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '_' ||
           c == '.' || c == '@';
  });
  return plain && v.front() != '.' ? v : "x" + to_hex(as_bytes(v));
}

fs::path params_path(const CliConfig& c) { return c.data_dir() / "params.json"; }
fs::path authority_path(const CliConfig& c) { return c.data_dir() / "authority.json"; }
fs::path cert_path(const CliConfig& c, const Identity& id) {
  return c.data_dir() / "certs" / (file_stem(id) + ".json");
}
fs::path dh_key_path(const CliConfig& c, const Identity& id) {
  return c.data_dir() / "dh" / (file_stem(id) + ".json");
}

EnrollmentRegistry load_enrollment(const CliConfig& c) {
  json j = read_json(authority_path(c));
  if (!j.contains("enrollment_key") || !j["enrollment_key"].is_string()) {
    throw Error(Errc::kMalformed, "authority state lacks an enrollment key");
  }
  return EnrollmentRegistry(from_hex(j["enrollment_key"].get<std::string>()));
}

Bytes proof_for(const CliConfig& c, const Identity& id, std::string_view purpose,
                const std::string& given) {
  if (!given.empty()) return from_hex(given);
  Digest secret = load_enrollment(c).secret_for(id);
  Digest proof = EnrollmentRegistry::make_proof(secret, purpose, id);
  return Bytes(proof.begin(), proof.end());
}

Endpoint endpoint_of(const CliConfig& c, std::string_view key, const std::string& override_value) {
  return Endpoint::parse(override_value.empty() ? c.get(key) : override_value);
}

// Blocks SIGINT and SIGTERM in every thread created afterwards and returns
// the set to wait on.
sigset_t block_termination() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

void serve_until_signal(const Globals& g, LineServer& server, const sigset_t& set,
                        std::string_view what) {
  server.start();
  emit(g, {{"listening", server.endpoint().str()}, {"service", what}},
       std::string(what) + " listening on " + server.endpoint().str());
  int sig = 0;
  sigwait(&set, &sig);
  server.stop();
  if (!g.json) std::cerr << what << " stopped after " << server.served() << " requests\n";
}

// ------------------------------------------------------------------ setup

struct SetupArgs {
  std::string profile = "test";
  bool force = false;
};

int cmd_setup(const Globals& g, const SetupArgs& a) {
  CliConfig c = resolve(g);
  auto profile = parse_profile(a.profile);
  if (!profile) throw Error(Errc::kInvalidArgument, "unknown profile " + a.profile);
  auto suite_id = parse_suite_name(c.get("suite"));
  if (!suite_id || *suite_id == SuiteId::kDhGroup) {
    throw Error(Errc::kInvalidArgument, "unsupported suite " + c.get("suite"));
  }
  std::optional<Bytes> seed;
  if (c.is_set("seed")) {
    if (!is_lower_hex(c.get("seed"), 64)) {
      throw Error(Errc::kInvalidArgument, "setup seed must be 64 lowercase hex characters");
    }
    seed = from_hex(c.get("seed"));
  }
  if (fs::exists(authority_path(c)) && !a.force) {
    throw Error(Errc::kPolicy, authority_path(c).string() + " exists; pass --force to replace it");
  }
  Authority authority = Authority::setup(*profile, seed, suite_by_id(*suite_id));
  write_json(params_path(c), authority.params().to_json());
  write_json(authority_path(c), authority.state_json(), true);
  emit(g,
       {{"data_dir", c.data_dir().string()},
        {"profile", profile_name(*profile)},
        {"params", authority.params().to_json()}},
       "wrote " + params_path(c).string() + " and " + authority_path(c).string());
  return 0;
}

// ------------------------------------------------------------------ issue

struct IssueArgs {
  std::vector<std::string> ids;
  std::string ids_file;
  std::string proof;
  bool keep_open = false;
};

std::vector<Identity> read_ids_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot read " + p.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Identity> out;
  json j = json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_array()) {
    for (const auto& v : j) out.push_back(Identity::parse(v.get<std::string>()));
    return out;
  }
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(Identity::parse(line));
    start = end + 1;
  }
  return out;
}

int cmd_issue(const Globals& g, const IssueArgs& a) {
  CliConfig c = resolve(g);
  std::vector<Identity> ids;
  for (const auto& s : a.ids) ids.push_back(Identity::parse(s));
  if (!a.ids_file.empty()) {
    auto more = read_ids_file(a.ids_file);
    ids.insert(ids.end(), more.begin(), more.end());
  }
  if (ids.empty()) throw Error(Errc::kInvalidArgument, "no identities to issue");
  if (!a.proof.empty() && ids.size() != 1) {
    throw Error(Errc::kInvalidArgument, "--proof applies to a single identity");
  }
  Authority authority = Authority::from_state_json(read_json(authority_path(c)));
  ordered_json issued = ordered_json::array();
  std::string text;
  for (const auto& id : ids) {
    Certificate cert = authority.issue_certificate(id, proof_for(c, id, EnrollmentRegistry::kIssue, a.proof));
    write_json(cert_path(c, id), cert.to_json());
    issued.push_back({{"identity", id.value()}, {"certificate", cert_path(c, id).string()}});
    text += "issued " + id.value() + " -> " + cert_path(c, id).string() + "\n";
  }
  if (!a.keep_open) authority.erase_master();
  write_json(authority_path(c), authority.state_json(), true);
  text += authority.master().live() ? "issuance remains open" : "master secret erased";
  emit(g, {{"issued", issued}, {"master_live", authority.master().live()}}, text);
  return 0;
}

// ------------------------------------------------------------------ servers

struct ServeMatchArgs {
  std::string listen;
  std::string mode = "static";
  std::string variant = "main";
  std::string log;
  bool pad = false;
  double rate_limit = 0;
  std::size_t workers = 4;
};

int cmd_serve_match(const Globals& g, const ServeMatchArgs& a) {
  CliConfig c = resolve(g);
  const sigset_t set = block_termination();
  MatchingServerOptions o;
  auto mode = parse_server_mode(a.mode);
  auto variant = parse_server_variant(a.variant);
  if (!mode) throw Error(Errc::kInvalidArgument, "unknown mode " + a.mode);
  if (!variant) throw Error(Errc::kInvalidArgument, "unknown variant " + a.variant);
  o.mode = *mode;
  o.variant = *variant;
  o.pad_responses = a.pad;
  if (!a.log.empty()) o.log_path = a.log;
  MatchingServer handler(o);
  LineServerOptions lo;
  lo.workers = a.workers;
  lo.rate_limit = a.rate_limit;
  LineServer server(endpoint_of(c, "server", a.listen), handler, lo);
  serve_until_signal(g, server, set, "matching server");
  return 0;
}

struct ServeArgs {
  std::string listen;
  std::string params;
  double rate_limit = 0;
  std::size_t workers = 4;
};

int cmd_serve_keys(const Globals& g, const ServeArgs& a) {
  CliConfig c = resolve(g);
  const sigset_t set = block_termination();
  SystemParams params = SystemParams::from_json(read_json(a.params.empty() ? params_path(c) : fs::path(a.params)));
  const fs::path secret_path = c.data_dir() / "keyserver.json";
  Bytes secret;
  if (fs::exists(secret_path)) {
    secret = from_hex(read_json(secret_path).at("phantom_secret").get<std::string>());
  } else {
    SystemRng rng;
    secret = rng.bytes(KeyServer::kPhantomSecretBytes);
    write_json(secret_path, {{"phantom_secret", to_hex(secret)}}, true);
  }
  KeyServer handler(make_dh_group(params.suite), secret, load_enrollment(c));
  secure_zero(secret);
  LineServerOptions lo;
  lo.workers = a.workers;
  lo.rate_limit = a.rate_limit;
  LineServer server(endpoint_of(c, "key_server", a.listen), handler, lo);
  serve_until_signal(g, server, set, "key server");
  return 0;
}

int cmd_serve_dir(const Globals& g, const ServeArgs& a) {
  CliConfig c = resolve(g);
  const sigset_t set = block_termination();
  KeyDirectory handler(load_enrollment(c));
  LineServerOptions lo;
  lo.workers = a.workers;
  lo.rate_limit = a.rate_limit;
  LineServer server(endpoint_of(c, "dir_server", a.listen), handler, lo);
  serve_until_signal(g, server, set, "key directory");
  return 0;
}

// ------------------------------------------------------------------ members

struct MemberArgs {
  std::string contacts;
  std::string cert;
  std::string params;
  std::string protocol = "main";
  std::string server;
  std::string key_server;
  std::string proof;
};

// Everything a client subcommand needs to act for one member.
struct MemberContext {
  Identity identity = Identity::parse("unset");
  ContactList contacts;
  std::string protocol;
  std::unique_ptr<SocketTransport> match;
  std::unique_ptr<SocketTransport> keys;
  std::unique_ptr<DiscoveryMember> member;
  KdfParams kdf;
};

DhKeyPair load_or_enroll_dh(const CliConfig& c, const MemberArgs& a, const Identity& id,
                            const SuitePtr& dh, Transport& keys) {
  const fs::path p = dh_key_path(c, id);
  if (fs::exists(p)) {
    json j = read_json(p);
    DhKeyPair kp = DhKeyPair::from_secret(*dh, Scalar::from_bytes(from_hex(j.at("sk").get<std::string>())));
    return kp;
  }
  SystemRng rng;
  DhKeyPair kp = DhKeyPair::generate(*dh, rng);
  KeyServerClient(keys, dh).enroll(id, kp.pk, proof_for(c, id, EnrollmentRegistry::kKeyServerEnroll, a.proof));
  write_json(p, {{"identity", id.value()}, {"sk", to_hex(kp.sk.bytes())}, {"pk", to_hex(kp.pk.encoding)}},
             true);
  return kp;
}

MemberContext open_member(const CliConfig& c, const MemberArgs& a) {
  MemberContext m;
  auto [id, contacts] = ContactList::from_json(read_json(a.contacts));
  m.identity = id;
  m.contacts = contacts;
  m.protocol = a.protocol;
  m.match = std::make_unique<SocketTransport>(endpoint_of(c, "server", a.server));
  if (a.protocol == "simple") {
    auto profile = parse_kdf_profile(c.get("kdf_profile"));
    if (!profile) throw Error(Errc::kInvalidArgument, "unknown kdf profile " + c.get("kdf_profile"));
    m.kdf = *profile == KdfProfile::kDemo ? KdfParams::demo() : KdfParams::test();
    return m;
  }
  SystemParams params = SystemParams::from_json(read_json(a.params.empty() ? params_path(c) : fs::path(a.params)));
  if (a.protocol == "main") {
    Certificate cert = Certificate::from_json(read_json(a.cert.empty() ? cert_path(c, id) : fs::path(a.cert)), *params.suite);
    if (cert.identity != id) throw Error(Errc::kInvalidArgument, "certificate belongs to " + cert.identity.value());
    m.member = std::make_unique<MemberState>(params, cert, contacts);
  } else if (a.protocol == "keyserver") {
    m.keys = std::make_unique<SocketTransport>(endpoint_of(c, "key_server", a.key_server));
    SuitePtr dh = make_dh_group(params.suite);
    DhKeyPair kp = load_or_enroll_dh(c, a, id, dh, *m.keys);
    m.member = std::make_unique<KeyServerMember>(id, contacts, kp, dh, *m.keys,
                                                 std::make_shared<PointCache>(params.suite));
  } else {
    throw Error(Errc::kInvalidArgument, "unknown protocol " + a.protocol);
  }
  return m;
}

DiscoveryOutput dynamic_round(MemberContext& m) {
  DiscoveryOutput out;
  for (const auto& contact : m.contacts.all()) {
    try {
      if (run_dynamic_step(*m.member, contact, *m.match)) out.discovered.insert(contact);
    } catch (const Error& e) {
      if (e.code() != Errc::kTransport) throw;
      out.incomplete = true;
    }
  }
  return out;
}

int cmd_discover(const Globals& g, const MemberArgs& a) {
  CliConfig c = resolve(g);
  MemberContext m = open_member(c, a);
  MatchClient client(*m.match);
  DiscoveryOutput out;
  std::string mode = "static";
  bool submitted = true;
  try {
    submitted = m.member ? submit_all(*m.member, client) : simple_submit_all(m.identity, m.contacts, client, m.kdf);
  } catch (const Error& e) {
    if (e.code() == Errc::kMode && m.member) {
      mode = "dynamic";
    } else if (e.code() != Errc::kPhase) {
      throw;
    }
  }
  if (mode == "dynamic") {
    out = dynamic_round(m);
  } else {
    try {
      out = m.member ? query_all(*m.member, client) : simple_query_all(m.identity, m.contacts, client, m.kdf);
    } catch (const Error& e) {
      if (e.code() != Errc::kPhase) throw;
      if (!g.json) std::cerr << "server is still in the submission phase; nothing to query yet\n";
    }
    out.incomplete = out.incomplete || !submitted;
  }
  ordered_json report = discovery_report(m.identity, out, mode);
  std::string text = m.identity.value() + " discovered " + std::to_string(out.discovered.size()) + " contact(s)";
  for (const auto& x : out.discovered) text += "\n  " + x.value();
  if (out.incomplete) text += "\n(incomplete: some messages failed)";
  emit(g, report, text);
  return 0;
}

struct WatchArgs {
  std::size_t rounds = 1;
  std::size_t interval_ms = 1000;
};

int cmd_dynamic_watch(const Globals& g, const MemberArgs& a, const WatchArgs& w) {
  CliConfig c = resolve(g);
  MemberContext m = open_member(c, a);
  if (!m.member) throw Error(Errc::kInvalidArgument, "dynamic mode needs the main or keyserver protocol");
  std::set<Identity> known;
  for (std::size_t round = 0; w.rounds == 0 || round < w.rounds; ++round) {
    if (round > 0) std::this_thread::sleep_for(std::chrono::milliseconds(w.interval_ms));
    DiscoveryOutput out = dynamic_round(m);
    std::string text;
    for (const auto& x : out.discovered) {
      if (known.insert(x).second) text += "discovered " + x.value() + "\n";
    }
    out.discovered = known;
    if (g.json) {
      emit(g, discovery_report(m.identity, out, "dynamic"), "");
    } else if (!text.empty()) {
      std::cout << text << std::flush;
    }
  }
  return 0;
}

int cmd_delete_contact(const Globals& g, const MemberArgs& a, const std::string& contact) {
  CliConfig c = resolve(g);
  MemberContext m = open_member(c, a);
  if (!m.member) throw Error(Errc::kInvalidArgument, "delete needs the main or keyserver protocol");
  Identity x = Identity::parse(contact);
  delete_contact(*m.member, x, *m.match);
  emit(g, {{"identity", m.identity.value()}, {"deleted", x.value()}},
       m.identity.value() + " deleted its tuple for " + x.value());
  return 0;
}

// ------------------------------------------------------------------ operations

int cmd_stats(const Globals& g) {
  CliConfig c = resolve(g);
  SocketTransport t(endpoint_of(c, "server", {}));
  ServerStats s = MatchClient(t).stats();
  emit(g, {{"s_c", s.s_c}, {"s_mc", s.s_mc}},
       "s_c=" + std::to_string(s.s_c) + " s_mc=" + std::to_string(s.s_mc));
  return 0;
}

int cmd_advance(const Globals& g) {
  CliConfig c = resolve(g);
  SocketTransport t(endpoint_of(c, "server", {}));
  MatchClient(t).advance_phase();
  emit(g, {{"ok", true}}, "matching server moved to the query phase");
  return 0;
}

struct SimulateArgs {
  std::string scenario;
  std::string config;
  std::string out;
  std::string transport;
  bool transparent = false;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  CliConfig c = resolve(g);
  json j = a.config.empty() ? json::object() : read_json(a.config);
  if (!j.is_object()) throw Error(Errc::kInvalidArgument, "scenario config must be a JSON object");
  if (!a.scenario.empty()) j["scenario"] = a.scenario;
  if (c.is_set("seed")) {
    try {
      j["seed"] = std::stoull(c.get("seed"));
    } catch (const std::exception&) {
      throw Error(Errc::kInvalidArgument, "simulate seed must be an unsigned integer");
    }
  }
  if (!a.transport.empty()) j["transport"] = a.transport;
  if (a.transparent) j["transparent_suite"] = true;
  ScenarioConfig cfg = ScenarioConfig::from_json(j);
  Report r = run_scenario(cfg);
  if (!a.out.empty()) write_json(a.out, r.to_json());
  ordered_json summary = {{"scenario", scenario_name(cfg.name)},
                          {"seed", cfg.seed},
                          {"passed", r.passed()},
                          {"valid", r.valid},
                          {"divergences", r.divergences},
                          {"elapsed_ms", r.elapsed_ms}};
  if (!a.out.empty()) summary["out"] = a.out;
  std::string text = std::string(scenario_name(cfg.name)) + " seed " + std::to_string(cfg.seed) + ": " +
                     (r.passed() ? "PASS" : (r.valid ? "FAIL" : "INVALID"));
  for (const auto& ch : r.checks) {
    text += "\n  " + std::string(ch.pass ? "ok   " : "FAIL ") + ch.name + (ch.detail.empty() ? "" : " (" + ch.detail + ")");
  }
  for (std::size_t i = 0; i < r.divergences.size() && i < 10; ++i) text += "\n  divergence: " + r.divergences[i];
  if (!r.valid) text += "\n  invalid: " + r.invalid_reason;
  emit(g, summary, text);
  return r.passed() ? 0 : 1;
}

}  // namespace
}  // namespace mcd::cli

int main(int argc, char** argv) {
  using namespace mcd::cli;
  CLI::App app{"mcd: mutual contact discovery tools"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::map<std::string, std::string> flag_values;
  for (const Setting& s : kSettings) {
    app.add_option(std::string(s.flag), flag_values[std::string(s.key)], std::string(s.help) + " [env " + std::string(s.env) + "]");
  }
  app.add_option("--config", g.config_path, "Config file (default: $MCD_CONFIG or ./mcd.json)");
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");

  std::function<int()> run;

  SetupArgs setup;
  auto* s_setup = app.add_subcommand("setup", "Create system parameters and the authority state");
  s_setup->add_option("--profile", setup.profile, "test|production")->check(CLI::IsMember({"test", "production"}));
  s_setup->add_flag("--force", setup.force, "Replace an existing authority state");
  s_setup->callback([&] { run = [&] { return cmd_setup(g, setup); }; });

  IssueArgs issue;
  auto* s_issue = app.add_subcommand("issue", "Issue member certificates, then erase the master secret");
  s_issue->add_option("--id", issue.ids, "Identity to certify (repeatable)");
  s_issue->add_option("--ids-file", issue.ids_file, "JSON array or one identity per line");
  s_issue->add_option("--proof", issue.proof, "Enrollment proof (hex); derived from the data dir when omitted");
  s_issue->add_flag("--keep-open", issue.keep_open, "Keep the master secret for later batches");
  s_issue->callback([&] { run = [&] { return cmd_issue(g, issue); }; });

  ServeMatchArgs sm;
  auto* s_sm = app.add_subcommand("serve-match", "Run the matching server");
  s_sm->add_option("--listen", sm.listen, "unix:PATH or tcp:HOST:PORT (default: --server)");
  s_sm->add_option("--mode", sm.mode, "static|dynamic")->check(CLI::IsMember({"static", "dynamic"}));
  s_sm->add_option("--variant", sm.variant, "main|simple")->check(CLI::IsMember({"main", "simple"}));
  s_sm->add_option("--log", sm.log, "Append-only log; replayed on start");
  s_sm->add_flag("--pad-responses", sm.pad, "Pad query responses to one tuple");
  s_sm->add_option("--rate-limit", sm.rate_limit, "Requests per second per peer (0 = off)");
  s_sm->add_option("--workers", sm.workers, "Worker threads");
  s_sm->callback([&] { run = [&] { return cmd_serve_match(g, sm); }; });

  ServeArgs sk;
  auto* s_sk = app.add_subcommand("serve-keys", "Run the key server");
  s_sk->add_option("--listen", sk.listen, "Endpoint (default: --key-server)");
  s_sk->add_option("--params", sk.params, "Parameters file (default: DATA_DIR/params.json)");
  s_sk->add_option("--rate-limit", sk.rate_limit, "Requests per second per peer (0 = off)");
  s_sk->add_option("--workers", sk.workers, "Worker threads");
  s_sk->callback([&] { run = [&] { return cmd_serve_keys(g, sk); }; });

  ServeArgs sd;
  auto* s_sd = app.add_subcommand("serve-dir", "Run the gated key directory");
  s_sd->add_option("--listen", sd.listen, "Endpoint (default: --dir-server)");
  s_sd->add_option("--rate-limit", sd.rate_limit, "Requests per second per peer (0 = off)");
  s_sd->add_option("--workers", sd.workers, "Worker threads");
  s_sd->callback([&] { run = [&] { return cmd_serve_dir(g, sd); }; });

  auto member_options = [](CLI::App* sub, MemberArgs& a) {
    sub->add_option("--contacts", a.contacts, "Contact list file")->required();
    sub->add_option("--cert", a.cert, "Certificate file (default: DATA_DIR/certs/ID.json)");
    sub->add_option("--params", a.params, "Parameters file (default: DATA_DIR/params.json)");
    sub->add_option("--protocol", a.protocol, "main|keyserver|simple")
        ->check(CLI::IsMember({"main", "keyserver", "simple"}));
    sub->add_option("--proof", a.proof, "Key-server enrollment proof (hex)");
  };

  MemberArgs disc;
  auto* s_disc = app.add_subcommand("discover", "Submit then query in static mode, or query once in dynamic mode");
  member_options(s_disc, disc);
  s_disc->callback([&] { run = [&] { return cmd_discover(g, disc); }; });

  MemberArgs watch;
  WatchArgs wargs;
  auto* s_watch = app.add_subcommand("dynamic-watch", "Re-query all contacts against a dynamic server");
  member_options(s_watch, watch);
  s_watch->add_option("--rounds", wargs.rounds, "Rounds to run (0 = until killed)");
  s_watch->add_option("--interval-ms", wargs.interval_ms, "Pause between rounds");
  s_watch->callback([&] { run = [&] { return cmd_dynamic_watch(g, watch, wargs); }; });

  MemberArgs del;
  std::string del_contact;
  auto* s_del = app.add_subcommand("delete-contact", "Remove the stored tuple for one contact");
  member_options(s_del, del);
  s_del->add_option("--contact", del_contact, "Contact to delete")->required();
  s_del->callback([&] { run = [&] { return cmd_delete_contact(g, del, del_contact); }; });

  SimulateArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Run a seeded scenario and compare with the oracle");
  s_sim->add_option("--scenario", sim.scenario, "Scenario name");
  s_sim->add_option("--scenario-config", sim.config, "Scenario config file (JSON)");
  s_sim->add_option("--out", sim.out, "Write the full report here");
  s_sim->add_option("--transport", sim.transport, "socket|inprocess")->check(CLI::IsMember({"socket", "inprocess"}));
  s_sim->add_flag("--transparent", sim.transparent, "Use the transparent test suite");
  s_sim->callback([&] { run = [&] { return cmd_simulate(g, sim); }; });

  auto* s_stats = app.add_subcommand("stats", "Print the matching server's s_c and s_mc");
  s_stats->callback([&] { run = [&] { return cmd_stats(g); }; });

  auto* s_adv = app.add_subcommand("advance-phase", "Move a static matching server to the query phase");
  s_adv->callback([&] { run = [&] { return cmd_advance(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (auto& [k, v] : flag_values) {
    if (!v.empty()) g.flags[k] = v;
  }
  try {
    return run();
  } catch (const mcd::Error& e) {
    std::cerr << "mcd: " << mcd::errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mcd: " << e.what() << "\n";
    return 1;
  }
}
