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


#ifndef MCD_SIM_ADVERSARY_H_
#define MCD_SIM_ADVERSARY_H_

#include <cstdint>
#include <mutex>
#include <random>
#include <vector>

#include "mcd/net/transport.h"
#include "mcd/server/matching_server.h"

namespace mcd {

struct MaliciousOptions {
  // Totals over the server's lifetime.
  std::size_t inject_random = 0;
  std::size_t inject_grafted = 0;
  // Upper bound per response for each injected kind.
  std::size_t per_response = 16;
  // Also return up to this many genuinely stored tuples from other members.
  std::size_t replay_stored = 8;
  // Empties this many non-empty query responses.
  std::size_t drop_responses = 0;
  std::uint64_t seed = 0;
};

struct MaliciousCounters {
  std::size_t injected_random = 0;
  std::size_t injected_grafted = 0;
  std::size_t replayed = 0;
  std::size_t dropped = 0;
};

// Matching server that stores honestly but tampers with query responses:
// drops real matches, adds random tuples, grafts observed first components
// onto random seconds and replays other members' stored tuples.
class MaliciousMatchHandler final : public LineHandler {
 public:
  MaliciousMatchHandler(MatchingServer& honest, MaliciousOptions options);
  std::string handle(std::string_view line) override;
  MaliciousCounters counters() const;

 private:
  AugmentedToken random_token();

  MatchingServer& honest_;
  MaliciousOptions options_;
  mutable std::mutex mu_;
  std::mt19937_64 rng_;
  std::vector<TuplePair> observed_;
  MaliciousCounters counters_;
};

}  // namespace mcd

#endif  // MCD_SIM_ADVERSARY_H_
