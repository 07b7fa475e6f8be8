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
#ifndef MCD_CRYPTO_RNG_H_
#define MCD_CRYPTO_RNG_H_

#include <cstdint>
#include <limits>
#include <span>

#include "mcd/crypto/bytes.h"
#include "mcd/crypto/hash.h"

namespace mcd {

// Byte source for secrets and protocol randomness. Also satisfies
// UniformRandomBitGenerator so it can drive std::shuffle.
class Rng {
 public:
  using result_type = std::uint64_t;

  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  Bytes bytes(std::size_t n);
  std::uint64_t next_u64();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }
};

// Operating-system randomness.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic stream: SHA-256(seed || "MCD-DRBG-v1" || counter) blocks.
// Test profile only.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(ByteSpan seed);
  explicit SeededRng(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  Bytes seed_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = sizeof(Digest);
};

}  // namespace mcd

#endif  // MCD_CRYPTO_RNG_H_
