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

#include "mcd/sim/adversary.h"

#include <algorithm>

namespace mcd {

MaliciousMatchHandler::MaliciousMatchHandler(MatchingServer& honest, MaliciousOptions options)
    : honest_(honest), options_(options), rng_(options.seed) {}

MaliciousCounters MaliciousMatchHandler::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

AugmentedToken MaliciousMatchHandler::random_token() {
  AugmentedToken::Array bits{};
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    std::uint64_t v = rng_();
    for (std::size_t j = 0; j < 8; ++j) bits[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return AugmentedToken(bits);
}

std::string MaliciousMatchHandler::handle(std::string_view line) {
  MatchRequest r;
  try {
    r = decode_match_request(line);
  } catch (const Error&) {
    return encode_error(Errc::kMalformed);
  }
  std::string response = honest_.dispatch(r);
  if (r.op == MatchOp::kSubmit) {
    std::lock_guard lock(mu_);
    observed_.push_back({r.t1, r.t2});
    return response;
  }
  if (r.op != MatchOp::kQuery) return response;

  std::vector<TuplePair> matches;
  try {
    matches = decode_matches(response);
  } catch (const Error&) {
    return response;
  }
  std::lock_guard lock(mu_);
  std::vector<TuplePair> withheld;
  if (!matches.empty() && counters_.dropped < options_.drop_responses) {
    withheld.swap(matches);
    ++counters_.dropped;
  }
  const std::size_t n_random =
      std::min(options_.per_response, options_.inject_random - counters_.injected_random);
  for (std::size_t i = 0; i < n_random; ++i) matches.push_back({random_token(), random_token()});
  counters_.injected_random += n_random;

  const std::size_t n_grafted =
      std::min(options_.per_response, options_.inject_grafted - counters_.injected_grafted);
  for (std::size_t i = 0; i < n_grafted; ++i) {
    // Alternate between the queried first component and ones seen elsewhere.
    AugmentedToken first = r.t1;
    if (i % 2 == 1 && !observed_.empty()) first = observed_[rng_() % observed_.size()].first;
    matches.push_back({first, random_token()});
  }
  counters_.injected_grafted += n_grafted;

  const std::size_t n_replay = std::min(options_.replay_stored, observed_.size());
  for (std::size_t i = 0; i < n_replay; ++i) {
    TuplePair t = observed_[rng_() % observed_.size()];
    if (i % 2 == 0) t.first = r.t1;
    if (std::find(withheld.begin(), withheld.end(), t) != withheld.end()) continue;
    matches.push_back(t);
    ++counters_.replayed;
  }

  std::shuffle(matches.begin(), matches.end(), rng_);
  return encode_matches(matches);
}

}  // namespace mcd
