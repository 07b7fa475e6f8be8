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


#include <benchmark/benchmark.h>

#include <vector>

#include "mcd/crypto/augmented_token.h"
#include "mcd/crypto/rng.h"
#include "mcd/server/matching_server.h"
#include "mcd/server/tuple_store.h"
#include "mcd/wire/messages.h"

namespace mcd {
namespace {

std::vector<TuplePair> random_tuples(std::size_t n, std::size_t fanout) {
  SeededRng rng(11);
  std::vector<TuplePair> out;
  AugmentedToken first = AugmentedToken::random(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % fanout == 0) first = AugmentedToken::random(rng);
    out.push_back({first, AugmentedToken::random(rng)});
  }
  return out;
}

void BM_StoreInsert(benchmark::State& state) {
  auto tuples = random_tuples(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    TupleStore store;
    for (const auto& t : tuples) store.insert(t);
    benchmark::DoNotOptimize(store.stats());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StoreInsert)->Arg(1 << 12)->Arg(1 << 16);

void BM_StoreMatches(benchmark::State& state) {
  auto tuples = random_tuples(1 << 16, 2);
  TupleStore store;
  for (const auto& t : tuples) store.insert(t);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.matches(tuples[i]));
    i = (i + 1) % tuples.size();
  }
}
BENCHMARK(BM_StoreMatches);

void BM_ServerQueryLine(benchmark::State& state) {
  auto tuples = random_tuples(1 << 14, 2);
  MatchingServer server{MatchingServerOptions{}};
  for (const auto& t : tuples) server.handle(encode_request(MatchRequest{MatchOp::kSubmit, t.first, t.second}));
  server.advance_phase();
  std::vector<std::string> lines;
  for (const auto& t : tuples) lines.push_back(encode_request(MatchRequest{MatchOp::kQuery, t.first, t.second}));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(server.handle(lines[i]));
    i = (i + 1) % lines.size();
  }
}
BENCHMARK(BM_ServerQueryLine);

}  // namespace
}  // namespace mcd

BENCHMARK_MAIN();
