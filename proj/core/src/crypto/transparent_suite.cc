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

#include "mcd/crypto/transparent_suite.h"

#include "mcd/crypto/hash.h"
#include "mcd/error.h"

namespace mcd {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

Bytes be8(u64 v) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return out;
}

u64 read_be8(ByteSpan b) {
  u64 v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

TransparentSuite::TransparentSuite(Options options) : options_(std::move(options)) {
  if (!is_prime_u64(options_.q) || options_.q >= (1ULL << 62)) {
    throw Error(Errc::kInvalidArgument, "transparent suite order must be a prime below 2^62");
  }
  options_.generator1 %= options_.q;
  options_.generator2 %= options_.q;
  if (options_.generator1 == 0 || options_.generator2 == 0) {
    throw Error(Errc::kInvalidArgument, "generator must not be the identity");
  }
}

Bytes TransparentSuite::order() const { return be8(options_.q); }

std::uint64_t TransparentSuite::reduce(const Scalar& k) const {
  u64 r = 0;
  for (std::uint8_t byte : k.bytes()) r = static_cast<u64>(((static_cast<u128>(r) << 8) | byte) % options_.q);
  return r;
}

SourcePoint TransparentSuite::point(Slot slot, std::uint64_t e) const {
  return {id(), slot, be8(e % options_.q)};
}

TargetElement TransparentSuite::target(std::uint64_t e) const { return {id(), be8(e % options_.q)}; }

std::uint64_t TransparentSuite::exponent(const SourcePoint& p) const {
  require(p, p.slot);
  return read_be8(p.encoding);
}

std::uint64_t TransparentSuite::exponent(const TargetElement& t) const {
  if (t.suite != id()) throw Error(Errc::kSuiteMismatch, "target element of another suite");
  if (t.encoding.size() != 8) throw Error(Errc::kMalformed, "bad target length");
  return read_be8(t.encoding);
}

SourcePoint TransparentSuite::generator(Slot slot) const {
  return point(slot, slot == Slot::kSlot1 ? options_.generator1 : options_.generator2);
}

SourcePoint TransparentSuite::identity(Slot slot) const { return point(slot, 0); }

bool TransparentSuite::is_identity(const SourcePoint& p) const { return exponent(p) == 0; }

SourcePoint TransparentSuite::add(const SourcePoint& a, const SourcePoint& b) const {
  require(b, a.slot);
  return point(a.slot, (exponent(a) + exponent(b)) % options_.q);
}

SourcePoint TransparentSuite::mul(const SourcePoint& p, const Scalar& k) const {
  return point(p.slot, mulmod(exponent(p), reduce(k), options_.q));
}

SourcePoint TransparentSuite::decode_point(Slot slot, ByteSpan enc) const {
  if (enc.size() != 8) throw Error(Errc::kMalformed, "bad point length");
  u64 e = read_be8(enc);
  if (e >= options_.q) throw Error(Errc::kMalformed, "exponent out of range");
  return point(slot, e);
}

TargetElement TransparentSuite::pair(const SourcePoint& a, const SourcePoint& b) const {
  require(a, Slot::kSlot1);
  require(b, Slot::kSlot2);
  return target(mulmod(exponent(a), exponent(b), options_.q));
}

TargetElement TransparentSuite::target_pow(const TargetElement& t, const Scalar& k) const {
  return target(mulmod(exponent(t), reduce(k), options_.q));
}

TargetElement TransparentSuite::target_identity() const { return target(0); }

TargetElement TransparentSuite::decode_target(ByteSpan enc) const {
  if (enc.size() != 8) throw Error(Errc::kMalformed, "bad target length");
  u64 e = read_be8(enc);
  if (e >= options_.q) throw Error(Errc::kMalformed, "exponent out of range");
  return target(e);
}

SourcePoint TransparentSuite::hash_to_point(const Identity& ident, Slot slot) const {
  if (auto it = options_.pinned.find(ident.value()); it != options_.pinned.end()) {
    return point(slot, slot == Slot::kSlot1 ? it->second.first : it->second.second);
  }
  const Bytes enc = ident.encoding();
  const u64 gen = slot == Slot::kSlot1 ? options_.generator1 : options_.generator2;
  for (int ctr = 0; ctr < 256; ++ctr) {
    const std::uint8_t c = static_cast<std::uint8_t>(ctr);
    Digest d = sha256({as_bytes(slot == Slot::kSlot1 ? "MCD-H1-T1-v1" : "MCD-H1-T2-v1"),
                       ByteSpan(&c, 1), enc});
    u128 wide = 0;
    for (int i = 0; i < 16; ++i) wide = (wide << 8) | d[static_cast<std::size_t>(i)];
    u64 e = static_cast<u64>(wide % options_.q);
    if (e == 0 || e == gen) continue;
    return point(slot, e);
  }
  throw Error(Errc::kBrokenSuite, "hash_to_point exhausted 256 attempts");
}

std::shared_ptr<const TransparentSuite> make_transparent_suite(TransparentSuite::Options options) {
  return std::make_shared<TransparentSuite>(std::move(options));
}

}  // namespace mcd
