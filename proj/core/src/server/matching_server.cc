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

#include "mcd/server/matching_server.h"

#include <fstream>
#include <mutex>

#include "mcd/error.h"

namespace mcd {

std::optional<ServerMode> parse_server_mode(std::string_view s) {
  if (s == "static") return ServerMode::kStatic;
  if (s == "dynamic") return ServerMode::kDynamic;
  return std::nullopt;
}

std::optional<ServerVariant> parse_server_variant(std::string_view s) {
  if (s == "main") return ServerVariant::kMain;
  if (s == "simple") return ServerVariant::kSimple;
  return std::nullopt;
}

MatchingServer::MatchingServer(MatchingServerOptions options) : options_(std::move(options)) {
  if (options_.variant == ServerVariant::kSimple && options_.mode != ServerMode::kStatic) {
    throw Error(Errc::kInvalidArgument, "the simple variant runs in static mode only");
  }
  if (options_.log_path) {
    if (std::filesystem::exists(*options_.log_path)) replay(*options_.log_path);
    log_ = std::fopen(options_.log_path->c_str(), "ab");
    if (log_ == nullptr) {
      throw Error(Errc::kInvalidArgument, "cannot open log " + options_.log_path->string());
    }
  }
}

MatchingServer::~MatchingServer() {
  if (log_ != nullptr) std::fclose(log_);
}

void MatchingServer::replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    ++line_no;
    auto nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      throw Error(Errc::kCorruptLog, "log line " + std::to_string(line_no) +
                                         ": truncated record (no trailing newline)");
    }
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    try {
      MatchRequest r = decode_match_request(line);
      if (r.op == MatchOp::kStats || (r.op == MatchOp::kQuery && options_.mode == ServerMode::kStatic) ||
          r.op == MatchOp::kSimpleQuery) {
        throw Error(Errc::kMalformed, "non-mutating op in log");
      }
      apply(r, nullptr, nullptr, false);
    } catch (const Error& e) {
      throw Error(Errc::kCorruptLog, "log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void MatchingServer::append_log(const MatchRequest& request) {
  if (log_ == nullptr) return;
  std::string line = encode_request(request);
  line.push_back('\n');
  if (std::fwrite(line.data(), 1, line.size(), log_) != line.size() || std::fflush(log_) != 0) {
    throw Error(Errc::kTransport, "log write failed");
  }
}

// Caller holds the unique lock.
void MatchingServer::apply(const MatchRequest& r, std::vector<TuplePair>* matches, bool* present,
                           bool log) {
  const bool simple = options_.variant == ServerVariant::kSimple;
  const TuplePair t{r.t1, r.t2};
  switch (r.op) {
    case MatchOp::kSubmit:
      if (simple || options_.mode != ServerMode::kStatic) throw Error(Errc::kMode, "submit");
      if (phase_ != Phase::kSubmission) throw Error(Errc::kPhase, "submit");
      if (log) append_log(r);
      store_.insert(t);
      return;
    case MatchOp::kQuery:
      if (simple) throw Error(Errc::kMode, "query");
      if (options_.mode == ServerMode::kStatic) {
        if (phase_ != Phase::kQuery) throw Error(Errc::kPhase, "query");
      } else {
        if (log) append_log(r);
        store_.insert(t);
      }
      if (matches != nullptr) *matches = store_.matches(t);
      return;
    case MatchOp::kDelete:
      if (simple || options_.mode != ServerMode::kDynamic) throw Error(Errc::kMode, "delete");
      if (log) append_log(r);
      store_.erase(t);
      return;
    case MatchOp::kAdvancePhase:
      if (options_.mode != ServerMode::kStatic) throw Error(Errc::kMode, "advance_phase");
      if (phase_ != Phase::kSubmission) throw Error(Errc::kPhase, "advance_phase");
      if (log) append_log(r);
      phase_ = Phase::kQuery;
      return;
    case MatchOp::kSimpleSubmit:
      if (!simple) throw Error(Errc::kMode, "simple_submit");
      if (phase_ != Phase::kSubmission) throw Error(Errc::kPhase, "simple_submit");
      if (log) append_log(r);
      simple_.insert(r.t1);
      return;
    case MatchOp::kSimpleQuery:
      if (!simple) throw Error(Errc::kMode, "simple_query");
      if (phase_ != Phase::kQuery) throw Error(Errc::kPhase, "simple_query");
      if (present != nullptr) *present = simple_.contains(r.t1);
      return;
    case MatchOp::kStats:
      return;
  }
}

std::vector<TuplePair> MatchingServer::shape(const TuplePair& t, std::vector<TuplePair> matches) {
  if (!options_.pad_responses) return matches;
  if (matches.empty()) return {{t.first, AugmentedToken::random(filler_rng_)}};
  matches.resize(1);
  return matches;
}

void MatchingServer::submit(const TuplePair& t) {
  std::unique_lock lock(mu_);
  apply({MatchOp::kSubmit, t.first, t.second}, nullptr, nullptr, true);
}

std::vector<TuplePair> MatchingServer::query(const TuplePair& t) {
  std::vector<TuplePair> out;
  {
    std::shared_lock lock(mu_);
    if (options_.variant != ServerVariant::kMain || options_.mode != ServerMode::kStatic) {
      throw Error(Errc::kMode, "query");
    }
    if (phase_ != Phase::kQuery) throw Error(Errc::kPhase, "query");
    out = store_.matches(t);
  }
  return shape(t, std::move(out));
}

std::vector<TuplePair> MatchingServer::dynamic_query(const TuplePair& t) {
  std::vector<TuplePair> out;
  {
    std::unique_lock lock(mu_);
    if (options_.mode != ServerMode::kDynamic) throw Error(Errc::kMode, "dynamic query");
    apply({MatchOp::kQuery, t.first, t.second}, &out, nullptr, true);
  }
  return shape(t, std::move(out));
}

void MatchingServer::remove(const TuplePair& t) {
  std::unique_lock lock(mu_);
  apply({MatchOp::kDelete, t.first, t.second}, nullptr, nullptr, true);
}

void MatchingServer::advance_phase() {
  std::unique_lock lock(mu_);
  apply({MatchOp::kAdvancePhase, {}, {}}, nullptr, nullptr, true);
}

ServerStats MatchingServer::stats() const {
  std::shared_lock lock(mu_);
  if (options_.variant == ServerVariant::kSimple) return {simple_.size(), 0};
  return store_.stats();
}

void MatchingServer::simple_submit(const AugmentedToken& t) {
  std::unique_lock lock(mu_);
  apply({MatchOp::kSimpleSubmit, t, {}}, nullptr, nullptr, true);
}

bool MatchingServer::simple_query(const AugmentedToken& t) const {
  std::shared_lock lock(mu_);
  if (options_.variant != ServerVariant::kSimple) throw Error(Errc::kMode, "simple_query");
  if (phase_ != Phase::kQuery) throw Error(Errc::kPhase, "simple_query");
  return simple_.contains(t);
}

std::string MatchingServer::dispatch(const MatchRequest& r) {
  try {
    const TuplePair t{r.t1, r.t2};
    switch (r.op) {
      case MatchOp::kSubmit: submit(t); return encode_ok();
      case MatchOp::kQuery:
        return encode_matches(options_.mode == ServerMode::kStatic ? query(t) : dynamic_query(t));
      case MatchOp::kDelete: remove(t); return encode_ok();
      case MatchOp::kStats: return encode_stats(stats());
      case MatchOp::kAdvancePhase: advance_phase(); return encode_ok();
      case MatchOp::kSimpleSubmit: simple_submit(r.t1); return encode_ok();
      case MatchOp::kSimpleQuery: return encode_present(simple_query(r.t1));
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::kPhase:
      case Errc::kMode:
      case Errc::kMalformed:
        return encode_error(e.code());
      default:
        throw;
    }
  }
  return encode_error(Errc::kMalformed);
}

std::string MatchingServer::handle(std::string_view line) {
  MatchRequest r;
  try {
    r = decode_match_request(line);
  } catch (const Error&) {
    return encode_error(Errc::kMalformed);
  }
  return dispatch(r);
}

Phase MatchingServer::phase() const {
  std::shared_lock lock(mu_);
  return phase_;
}

TupleStore MatchingServer::snapshot() const {
  std::shared_lock lock(mu_);
  return store_;
}

std::size_t MatchingServer::simple_size() const {
  std::shared_lock lock(mu_);
  return simple_.size();
}

}  // namespace mcd
