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

#include "mcd/wire/messages.h"

#include <initializer_list>

namespace mcd {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::kMalformed, what); }

void require_fields(const json& j, std::initializer_list<const char*> fields) {
  if (j.size() != fields.size()) malformed("unexpected field set");
  for (const char* f : fields) {
    if (!j.contains(f)) malformed(std::string("missing field ") + f);
  }
}

std::string string_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) malformed(std::string(key) + " must be a string");
  return v.get<std::string>();
}

AugmentedToken token_field(const json& j, const char* key) {
  return AugmentedToken::from_hex(string_field(j, key));
}

Bytes hex_field(const json& j, const char* key) {
  std::string s = string_field(j, key);
  if (s.empty() || !is_lower_hex(s, s.size())) malformed(std::string(key) + " must be lowercase hex");
  return from_hex(s);
}

// Throws the carried error when the response is {"err":...}.
json parse_response(std::string_view line) {
  json j = parse_object(line);
  if (j.contains("err")) {
    std::string name = j["err"].is_string() ? j["err"].get<std::string>() : "";
    auto code = errc_from_name(name);
    throw Error(code.value_or(Errc::kMalformed), "server error: " + name);
  }
  return j;
}

}  // namespace

json parse_object(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) malformed("not a JSON object");
  return j;
}

std::optional<std::string> peek_op(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    return std::nullopt;
  }
  return j["op"].get<std::string>();
}

// ---------------------------------------------------------------- matching

std::string_view match_op_name(MatchOp op) {
  switch (op) {
    case MatchOp::kSubmit: return "submit";
    case MatchOp::kQuery: return "query";
    case MatchOp::kDelete: return "delete";
    case MatchOp::kStats: return "stats";
    case MatchOp::kAdvancePhase: return "advance_phase";
    case MatchOp::kSimpleSubmit: return "simple_submit";
    case MatchOp::kSimpleQuery: return "simple_query";
  }
  return "";
}

std::string encode_request(const MatchRequest& r) {
  ojson j;
  j["op"] = match_op_name(r.op);
  switch (r.op) {
    case MatchOp::kSubmit:
    case MatchOp::kQuery:
    case MatchOp::kDelete:
      j["t1"] = r.t1.hex();
      j["t2"] = r.t2.hex();
      break;
    case MatchOp::kSimpleSubmit:
    case MatchOp::kSimpleQuery:
      j["t"] = r.t1.hex();
      break;
    case MatchOp::kStats:
    case MatchOp::kAdvancePhase:
      break;
  }
  return j.dump();
}

MatchRequest decode_match_request(std::string_view line) {
  json j = parse_object(line);
  if (!j.contains("op") || !j["op"].is_string()) malformed("missing op");
  const std::string op = j["op"].get<std::string>();
  MatchRequest r{};
  if (op == "submit" || op == "query" || op == "delete") {
    require_fields(j, {"op", "t1", "t2"});
    r.op = op == "submit" ? MatchOp::kSubmit : op == "query" ? MatchOp::kQuery : MatchOp::kDelete;
    r.t1 = token_field(j, "t1");
    r.t2 = token_field(j, "t2");
  } else if (op == "simple_submit" || op == "simple_query") {
    require_fields(j, {"op", "t"});
    r.op = op == "simple_submit" ? MatchOp::kSimpleSubmit : MatchOp::kSimpleQuery;
    r.t1 = token_field(j, "t");
  } else if (op == "stats" || op == "advance_phase") {
    require_fields(j, {"op"});
    r.op = op == "stats" ? MatchOp::kStats : MatchOp::kAdvancePhase;
  } else {
    malformed("unknown op");
  }
  return r;
}

std::string encode_ok() { return R"({"ok":true})"; }

std::string encode_error(Errc code) {
  ojson j;
  j["err"] = errc_name(code);
  return j.dump();
}

std::string encode_matches(const std::vector<TuplePair>& matches) {
  ojson arr = ojson::array();
  for (const auto& m : matches) arr.push_back({m.first.hex(), m.second.hex()});
  ojson j;
  j["matches"] = std::move(arr);
  return j.dump();
}

std::string encode_stats(const ServerStats& s) {
  ojson j;
  j["s_c"] = s.s_c;
  j["s_mc"] = s.s_mc;
  return j.dump();
}

std::string encode_present(bool present) {
  ojson j;
  j["present"] = present;
  return j.dump();
}

void decode_ok(std::string_view line) {
  json j = parse_response(line);
  if (!j.contains("ok") || j["ok"] != true) malformed("expected ok");
}

std::vector<TuplePair> decode_matches(std::string_view line) {
  json j = parse_response(line);
  if (!j.contains("matches") || !j["matches"].is_array()) malformed("expected matches");
  std::vector<TuplePair> out;
  out.reserve(j["matches"].size());
  for (const json& m : j["matches"]) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_string() || !m[1].is_string()) {
      malformed("match entries must be [hex64, hex64]");
    }
    out.push_back({AugmentedToken::from_hex(m[0].get<std::string>()),
                   AugmentedToken::from_hex(m[1].get<std::string>())});
  }
  return out;
}

ServerStats decode_stats(std::string_view line) {
  json j = parse_response(line);
  if (!j.contains("s_c") || !j.contains("s_mc") || !j["s_c"].is_number_unsigned() ||
      !j["s_mc"].is_number_unsigned()) {
    malformed("expected stats");
  }
  return {j["s_c"].get<std::uint64_t>(), j["s_mc"].get<std::uint64_t>()};
}

bool decode_present(std::string_view line) {
  json j = parse_response(line);
  if (!j.contains("present") || !j["present"].is_boolean()) malformed("expected present");
  return j["present"].get<bool>();
}

// ---------------------------------------------------------------- key server

std::string encode_request(const KeyRequest& r) {
  ojson j;
  if (r.op == KeyRequest::Op::kGetKey) {
    j["op"] = "getkey";
    j["id"] = r.id;
  } else {
    j["op"] = "enroll";
    j["id"] = r.id;
    j["key"] = to_hex(r.key);
    j["proof"] = to_hex(r.proof);
  }
  return j.dump();
}

KeyRequest decode_key_request(std::string_view line) {
  json j = parse_object(line);
  if (!j.contains("op") || !j["op"].is_string()) malformed("missing op");
  const std::string op = j["op"].get<std::string>();
  KeyRequest r{};
  if (op == "getkey") {
    require_fields(j, {"op", "id"});
    r.op = KeyRequest::Op::kGetKey;
    r.id = string_field(j, "id");
  } else if (op == "enroll") {
    require_fields(j, {"op", "id", "key", "proof"});
    r.op = KeyRequest::Op::kEnroll;
    r.id = string_field(j, "id");
    r.key = hex_field(j, "key");
    r.proof = hex_field(j, "proof");
  } else {
    malformed("unknown op");
  }
  return r;
}

std::string encode_key(ByteSpan key) {
  ojson j;
  j["key"] = to_hex(key);
  return j.dump();
}

Bytes decode_key(std::string_view line) {
  json j = parse_response(line);
  if (j.size() != 1 || !j.contains("key")) malformed("expected key");
  return hex_field(j, "key");
}

// ---------------------------------------------------------------- directory

std::string encode_request(const DirRequest& r) {
  ojson j;
  if (r.op == DirRequest::Op::kPut) {
    j["op"] = "dir_put";
    j["id"] = r.id;
    j["key"] = to_hex(r.key);
    ojson gates = ojson::array();
    for (const auto& g : r.gates) gates.push_back(g.hex());
    j["gates"] = std::move(gates);
    j["proof"] = to_hex(r.proof);
  } else {
    j["op"] = "dir_get";
    j["id"] = r.id;
    j["token"] = r.token.hex();
  }
  return j.dump();
}

DirRequest decode_dir_request(std::string_view line) {
  json j = parse_object(line);
  if (!j.contains("op") || !j["op"].is_string()) malformed("missing op");
  const std::string op = j["op"].get<std::string>();
  DirRequest r{};
  if (op == "dir_put") {
    require_fields(j, {"op", "id", "key", "gates", "proof"});
    r.op = DirRequest::Op::kPut;
    r.id = string_field(j, "id");
    r.key = hex_field(j, "key");
    r.proof = hex_field(j, "proof");
    if (!j["gates"].is_array()) malformed("gates must be an array");
    for (const json& g : j["gates"]) {
      if (!g.is_string()) malformed("gates must be hex64 strings");
      r.gates.push_back(AugmentedToken::from_hex(g.get<std::string>()));
    }
  } else if (op == "dir_get") {
    require_fields(j, {"op", "id", "token"});
    r.op = DirRequest::Op::kGet;
    r.id = string_field(j, "id");
    r.token = token_field(j, "token");
  } else {
    malformed("unknown op");
  }
  return r;
}

std::optional<Bytes> decode_dir_key(std::string_view line) {
  try {
    return decode_key(line);
  } catch (const Error& e) {
    if (e.code() == Errc::kDenied) return std::nullopt;
    throw;
  }
}

}  // namespace mcd
