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
#ifndef MCD_CRYPTO_TRANSPARENT_SUITE_H_
#define MCD_CRYPTO_TRANSPARENT_SUITE_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "mcd/crypto/group_suite.h"

namespace mcd {

// Test-only pairing whose discrete logarithms are public: both source groups
// are (Z_q, +) and a point is stored as its exponent; pair(x, y) has exponent
// x * y mod q. Never selectable on the wire.
class TransparentSuite final : public GroupSuite {
 public:
  struct Options {
    std::uint64_t q = 2305843009213693951ULL;  // 2^61 - 1
    std::uint64_t generator1 = 1;
    std::uint64_t generator2 = 1;
    // identity -> (slot1 exponent, slot2 exponent), overriding the hash.
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> pinned;
  };

  explicit TransparentSuite(Options options);

  SuiteId id() const override { return SuiteId::kTransparentTestPairing; }
  Bytes order() const override;
  std::size_t point_size(Slot) const override { return 8; }
  std::size_t target_size() const override { return 8; }

  SourcePoint generator(Slot slot) const override;
  SourcePoint identity(Slot slot) const override;
  bool is_identity(const SourcePoint& p) const override;
  SourcePoint add(const SourcePoint& a, const SourcePoint& b) const override;
  SourcePoint mul(const SourcePoint& p, const Scalar& k) const override;
  SourcePoint decode_point(Slot slot, ByteSpan encoding) const override;

  TargetElement pair(const SourcePoint& a, const SourcePoint& b) const override;
  TargetElement target_pow(const TargetElement& t, const Scalar& k) const override;
  TargetElement target_identity() const override;
  TargetElement decode_target(ByteSpan encoding) const override;

  SourcePoint hash_to_point(const Identity& id, Slot slot) const override;

  // Oracle access.
  std::uint64_t q() const { return options_.q; }
  std::uint64_t exponent(const SourcePoint& p) const;
  std::uint64_t exponent(const TargetElement& t) const;
  SourcePoint point(Slot slot, std::uint64_t exponent) const;
  TargetElement target(std::uint64_t exponent) const;
  std::uint64_t reduce(const Scalar& k) const;

 private:
  Options options_;
};

std::shared_ptr<const TransparentSuite> make_transparent_suite(
    TransparentSuite::Options options = {});

bool is_prime_u64(std::uint64_t n);

}  // namespace mcd

#endif  // MCD_CRYPTO_TRANSPARENT_SUITE_H_
