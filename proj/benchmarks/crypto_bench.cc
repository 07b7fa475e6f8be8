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

#include <string>

#include "mcd/authority/authority.h"
#include "mcd/client/member.h"
#include "mcd/crypto/augmented_token.h"
#include "mcd/crypto/group_suite.h"
#include "mcd/crypto/kdf.h"
#include "mcd/crypto/rng.h"
#include "mcd/crypto/transparent_suite.h"
#include "mcd/variants/simple.h"

namespace mcd {
namespace {

Identity nth(std::int64_t i) { return Identity::parse("+1555" + std::to_string(1000000 + i)); }

void BM_HashToG1(benchmark::State& state) {
  SuitePtr suite = production_suite();
  std::int64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(suite->hash_to_point(nth(i++), Slot::kSlot1));
}
BENCHMARK(BM_HashToG1);

void BM_HashToG2(benchmark::State& state) {
  SuitePtr suite = production_suite();
  std::int64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(suite->hash_to_point(nth(i++), Slot::kSlot2));
}
BENCHMARK(BM_HashToG2);

void BM_Pairing(benchmark::State& state) {
  SuitePtr suite = production_suite();
  SourcePoint p = suite->hash_to_point(nth(1), Slot::kSlot1);
  SourcePoint q = suite->hash_to_point(nth(2), Slot::kSlot2);
  for (auto _ : state) benchmark::DoNotOptimize(suite->pair(p, q));
}
BENCHMARK(BM_Pairing);

void BM_ScalarMulG2(benchmark::State& state) {
  SuitePtr suite = production_suite();
  SeededRng rng(7);
  Scalar k = suite->random_scalar(rng);
  SourcePoint q = suite->generator(Slot::kSlot2);
  for (auto _ : state) benchmark::DoNotOptimize(suite->mul(q, k));
}
BENCHMARK(BM_ScalarMulG2);

void token_bench(benchmark::State& state, SuitePtr suite) {
  Authority authority = Authority::setup(SecurityProfile::kTest, Bytes(32, 0x42), suite);
  const Identity me = nth(0);
  std::set<Identity> contacts;
  for (std::int64_t i = 1; i <= 4096; ++i) contacts.insert(nth(i));
  Digest proof = EnrollmentRegistry::make_proof(authority.enrollment().secret_for(me),
                                                EnrollmentRegistry::kIssue, me);
  MemberState member(authority.params(), authority.issue_certificate(me, proof),
                     ContactList(me, contacts, {}));
  auto it = contacts.begin();
  for (auto _ : state) {
    if (it == contacts.end()) {
      state.PauseTiming();
      member = MemberState(authority.params(), member.certificate(), member.contacts());
      it = contacts.begin();
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(member.make_submission(*it++));
  }
}

void BM_SubmissionProduction(benchmark::State& state) { token_bench(state, production_suite()); }
BENCHMARK(BM_SubmissionProduction);

void BM_SubmissionTransparent(benchmark::State& state) {
  token_bench(state, make_transparent_suite());
}
BENCHMARK(BM_SubmissionTransparent);

void BM_H2(benchmark::State& state) {
  SuitePtr suite = production_suite();
  SourcePoint a = suite->hash_to_point(nth(1), Slot::kSlot1);
  SourcePoint b = suite->hash_to_point(nth(2), Slot::kSlot1);
  Bytes t(576, 0x11);
  for (auto _ : state) benchmark::DoNotOptimize(h2(t, a, b));
}
BENCHMARK(BM_H2);

void BM_SimpleToken(benchmark::State& state) {
  KdfParams params = state.range(0) == 0 ? KdfParams::test() : KdfParams::demo();
  std::int64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simple_token(nth(i), nth(i + 1), params));
    ++i;
  }
}
BENCHMARK(BM_SimpleToken)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mcd
