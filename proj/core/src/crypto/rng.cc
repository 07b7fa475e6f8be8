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
#include "mcd/crypto/rng.h"

#include <openssl/rand.h>

#include <algorithm>

#include "mcd/error.h"

namespace mcd {

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

std::uint64_t Rng::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error(Errc::kBrokenSuite, "system randomness unavailable");
  }
}

SeededRng::SeededRng(ByteSpan seed) : seed_(seed.begin(), seed.end()) {}

SeededRng::SeededRng(std::uint64_t seed) {
  for (int i = 7; i >= 0; --i) seed_.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
}

void SeededRng::refill() {
  std::uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  block_ = sha256({seed_, as_bytes("MCD-DRBG-v1"), ctr});
  used_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n, out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += n;
    pos += n;
  }
}

}  // namespace mcd
