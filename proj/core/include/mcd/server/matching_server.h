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


#ifndef MCD_SERVER_MATCHING_SERVER_H_
#define MCD_SERVER_MATCHING_SERVER_H_

#include <cstdio>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mcd/crypto/rng.h"
#include "mcd/net/transport.h"
#include "mcd/server/tuple_store.h"
#include "mcd/wire/messages.h"

namespace mcd {

enum class ServerMode { kStatic, kDynamic };
enum class Phase { kSubmission, kQuery };
// kSimple serves the single-token KDF variant instead of tuple pairs.
enum class ServerVariant { kMain, kSimple };

std::optional<ServerMode> parse_server_mode(std::string_view s);
std::optional<ServerVariant> parse_server_variant(std::string_view s);

struct MatchingServerOptions {
  ServerMode mode = ServerMode::kStatic;
  ServerVariant variant = ServerVariant::kMain;
  // Every query response carries exactly one tuple.
  bool pad_responses = false;
  // Append-only operation log. An existing log is replayed on construction.
  std::optional<std::filesystem::path> log_path;
};

class MatchingServer final : public LineHandler {
 public:
  // Throws Error(kCorruptLog) naming the first bad line of an existing log.
  explicit MatchingServer(MatchingServerOptions options);
  ~MatchingServer() override;
  MatchingServer(const MatchingServer&) = delete;
  MatchingServer& operator=(const MatchingServer&) = delete;

  // Each operation throws Error(kPhase) or Error(kMode) on a contract
  // violation.
  void submit(const TuplePair& t);
  std::vector<TuplePair> query(const TuplePair& t);
  std::vector<TuplePair> dynamic_query(const TuplePair& t);
  void remove(const TuplePair& t);
  void advance_phase();
  ServerStats stats() const;

  void simple_submit(const AugmentedToken& t);
  bool simple_query(const AugmentedToken& t) const;

  // Runs one request. Query ops route to query() or dynamic_query() by mode.
  std::string dispatch(const MatchRequest& request);
  std::string handle(std::string_view line) override;

  const MatchingServerOptions& options() const { return options_; }
  Phase phase() const;
  TupleStore snapshot() const;
  std::size_t simple_size() const;

 private:
  void apply(const MatchRequest& request, std::vector<TuplePair>* matches, bool* present,
             bool log);
  void replay(const std::filesystem::path& path);
  void append_log(const MatchRequest& request);
  std::vector<TuplePair> shape(const TuplePair& t, std::vector<TuplePair> matches);

  MatchingServerOptions options_;
  mutable std::shared_mutex mu_;
  Phase phase_ = Phase::kSubmission;
  TupleStore store_;
  std::unordered_set<AugmentedToken> simple_;
  std::FILE* log_ = nullptr;
  SystemRng filler_rng_;
};

}  // namespace mcd

#endif  // MCD_SERVER_MATCHING_SERVER_H_
