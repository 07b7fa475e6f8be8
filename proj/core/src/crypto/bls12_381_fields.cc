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

#include <algorithm>

#include "mcd/crypto/bls12_381.h"

namespace mcd::bls12_381 {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr Limbs kP = {0xb9feffffffffaaabULL, 0x1eabfffeb153ffffULL,
                      0x6730d2a0f6b0f624ULL, 0x64774b84f38512bfULL,
                      0x4b1ba7b6434bacd7ULL, 0x1a0111ea397fe69aULL};
constexpr Limbs kR = {0x760900000002fffdULL, 0xebf4000bc40c0002ULL,
                      0x5f48985753c758baULL, 0x77ce585370525745ULL,
                      0x5c071a97a256ec6dULL, 0x15f65ec3fa80e493ULL};
constexpr Limbs kR2 = {0xf4df1f341c341746ULL, 0x0a76e6a609d104f1ULL,
                       0x8de5476c4c95b6d5ULL, 0x67eb88a9939d83c0ULL,
                       0x9a793e85b519952dULL, 0x11988fe592cae3aaULL};
constexpr u64 kInv = 0x89f3fffcfffcfffdULL;

// a >= b
bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 5; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

// a - b, returns borrow.
u64 sub_with_borrow(Limbs& out, const Limbs& a, const Limbs& b) {
  u64 borrow = 0;
  for (int i = 0; i < 6; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    out[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
  return borrow;
}

u64 add_with_carry(Limbs& out, const Limbs& a, const Limbs& b) {
  u64 carry = 0;
  for (int i = 0; i < 6; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    out[i] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
  return carry;
}

Limbs mont_mul(const Limbs& a, const Limbs& b) {
  u64 t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0, t6 = 0;
  const u64* ap = a.data();
#pragma GCC unroll 6
  for (int i = 0; i < 6; ++i) {
    const u64 bi = b[static_cast<std::size_t>(i)];
    u128 s = static_cast<u128>(ap[0]) * bi + t0;
    t0 = static_cast<u64>(s);
    s = static_cast<u128>(ap[1]) * bi + t1 + static_cast<u64>(s >> 64);
    t1 = static_cast<u64>(s);
    s = static_cast<u128>(ap[2]) * bi + t2 + static_cast<u64>(s >> 64);
    t2 = static_cast<u64>(s);
    s = static_cast<u128>(ap[3]) * bi + t3 + static_cast<u64>(s >> 64);
    t3 = static_cast<u64>(s);
    s = static_cast<u128>(ap[4]) * bi + t4 + static_cast<u64>(s >> 64);
    t4 = static_cast<u64>(s);
    s = static_cast<u128>(ap[5]) * bi + t5 + static_cast<u64>(s >> 64);
    t5 = static_cast<u64>(s);
    s = static_cast<u128>(t6) + static_cast<u64>(s >> 64);
    t6 = static_cast<u64>(s);
    const u64 t7 = static_cast<u64>(s >> 64);

    const u64 m = t0 * kInv;
    s = static_cast<u128>(m) * kP[0] + t0;
    s = static_cast<u128>(m) * kP[1] + t1 + static_cast<u64>(s >> 64);
    t0 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kP[2] + t2 + static_cast<u64>(s >> 64);
    t1 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kP[3] + t3 + static_cast<u64>(s >> 64);
    t2 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kP[4] + t4 + static_cast<u64>(s >> 64);
    t3 = static_cast<u64>(s);
    s = static_cast<u128>(m) * kP[5] + t5 + static_cast<u64>(s >> 64);
    t4 = static_cast<u64>(s);
    s = static_cast<u128>(t6) + static_cast<u64>(s >> 64);
    t5 = static_cast<u64>(s);
    t6 = t7 + static_cast<u64>(s >> 64);
  }
  Limbs r = {t0, t1, t2, t3, t4, t5};
  if (t6 != 0 || geq(r, kP)) sub_with_borrow(r, r, kP);
  return r;
}

Limbs shift_right(const Limbs& a, unsigned bits) {
  Limbs r{};
  for (int i = 0; i < 6; ++i) {
    r[i] = a[i] >> bits;
    if (i + 1 < 6 && bits != 0) r[i] |= a[i + 1] << (64 - bits);
  }
  return r;
}

Limbs sub_small(const Limbs& a, u64 v) {
  Limbs b{};
  b[0] = v;
  Limbs r{};
  sub_with_borrow(r, a, b);
  return r;
}

Limbs add_small(const Limbs& a, u64 v) {
  Limbs b{};
  b[0] = v;
  Limbs r{};
  add_with_carry(r, a, b);
  return r;
}

Limbs div_small(const Limbs& a, u64 d) {
  Limbs r{};
  u128 rem = 0;
  for (int i = 5; i >= 0; --i) {
    u128 cur = (rem << 64) | a[i];
    r[i] = static_cast<u64>(cur / d);
    rem = cur % d;
  }
  return r;
}

struct Exponents {
  Limbs p_minus_2 = sub_small(kP, 2);
  Limbs p_plus_1_over_4 = shift_right(add_small(kP, 1), 2);
  Limbs p_minus_3_over_4 = shift_right(sub_small(kP, 3), 2);
  Limbs p_minus_1_over_2 = shift_right(sub_small(kP, 1), 1);
  Limbs p_minus_1_over_6 = div_small(sub_small(kP, 1), 6);
};

const Exponents& exps() {
  static const Exponents e;
  return e;
}

template <typename T>
T pow_impl(const T& base, std::span<const u64> exp, const T& one) {
  T acc = one;
  bool started = false;
  for (std::size_t i = exp.size(); i-- > 0;) {
    for (int bit = 63; bit >= 0; --bit) {
      if (started) acc = acc.square();
      if ((exp[i] >> bit) & 1) {
        acc = started ? acc * base : base;
        started = true;
      }
    }
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- Fp

Fp Fp::one() { return Fp(kR); }

Fp Fp::from_u64(std::uint64_t v) {
  Limbs l{};
  l[0] = v;
  return from_canonical(l);
}

Fp Fp::from_canonical(const Limbs& v) { return Fp(mont_mul(v, kR2)); }

std::optional<Fp> Fp::from_bytes(std::span<const std::uint8_t, kFpBytes> in) {
  Limbs l{};
  for (int i = 0; i < 6; ++i) {
    u64 w = 0;
    for (int j = 0; j < 8; ++j) w = (w << 8) | in[static_cast<std::size_t>((5 - i) * 8 + j)];
    l[static_cast<std::size_t>(i)] = w;
  }
  if (geq(l, kP)) return std::nullopt;
  return from_canonical(l);
}

Fp Fp::from_wide_bytes(std::span<const std::uint8_t, 64> in) {
  auto half = [&](std::size_t offset) {
    Limbs l{};
    for (int i = 0; i < 4; ++i) {
      u64 w = 0;
      for (int j = 0; j < 8; ++j) w = (w << 8) | in[offset + static_cast<std::size_t>((3 - i) * 8 + j)];
      l[static_cast<std::size_t>(i)] = w;
    }
    return from_canonical(l);
  };
  Limbs two_256{};
  two_256[4] = 1;
  return half(0) * from_canonical(two_256) + half(32);
}

Limbs Fp::canonical() const {
  Limbs one{};
  one[0] = 1;
  return mont_mul(v_, one);
}

void Fp::to_bytes(std::span<std::uint8_t, kFpBytes> out) const {
  Limbs l = canonical();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 8; ++j) {
      out[static_cast<std::size_t>((5 - i) * 8 + j)] =
          static_cast<std::uint8_t>(l[static_cast<std::size_t>(i)] >> (56 - 8 * j));
    }
  }
}

bool Fp::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](u64 w) { return w == 0; });
}

bool Fp::lexicographically_largest() const {
  Limbs c = canonical();
  const Limbs& half = exps().p_minus_1_over_2;
  return geq(c, half) && c != half;
}

Fp Fp::operator+(const Fp& o) const {
  Limbs r{};
  add_with_carry(r, v_, o.v_);
  if (geq(r, kP)) sub_with_borrow(r, r, kP);
  return Fp(r);
}

Fp Fp::operator-(const Fp& o) const {
  Limbs r{};
  if (sub_with_borrow(r, v_, o.v_)) add_with_carry(r, r, kP);
  return Fp(r);
}

Fp Fp::operator*(const Fp& o) const { return Fp(mont_mul(v_, o.v_)); }

Fp Fp::operator-() const {
  if (is_zero()) return *this;
  Limbs r{};
  sub_with_borrow(r, kP, v_);
  return Fp(r);
}

Fp Fp::pow(std::span<const std::uint64_t> exp) const {
  return pow_impl(*this, exp, one());
}

Fp Fp::inverse() const { return pow(exps().p_minus_2); }

std::optional<Fp> Fp::sqrt() const {
  Fp s = pow(exps().p_plus_1_over_4);
  if (s.square() == *this) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------- Fp2

bool Fp2::lexicographically_largest() const {
  if (!c1.is_zero()) return c1.lexicographically_largest();
  return c0.lexicographically_largest();
}

Fp2 Fp2::operator*(const Fp2& o) const {
  Fp aa = c0 * o.c0;
  Fp bb = c1 * o.c1;
  Fp cross = (c0 + c1) * (o.c0 + o.c1);
  return {aa - bb, cross - aa - bb};
}

Fp2 Fp2::square() const {
  Fp ab = c0 * c1;
  return {(c0 + c1) * (c0 - c1), ab + ab};
}

Fp2 Fp2::pow(std::span<const std::uint64_t> exp) const {
  return pow_impl(*this, exp, one());
}

Fp2 Fp2::inverse() const {
  Fp t = (c0.square() + c1.square()).inverse();
  return {c0 * t, -(c1 * t)};
}

std::optional<Fp2> Fp2::sqrt() const {
  if (is_zero()) return Fp2::zero();
  Fp2 a1 = pow(exps().p_minus_3_over_4);
  Fp2 x0 = a1 * *this;
  Fp2 alpha = a1 * x0;
  Fp2 candidate;
  if (alpha == -Fp2::one()) {
    candidate = {-x0.c1, x0.c0};
  } else {
    Fp2 b = (alpha + Fp2::one()).pow(exps().p_minus_1_over_2);
    candidate = b * x0;
  }
  if (candidate.square() == *this) return candidate;
  return std::nullopt;
}

// ---------------------------------------------------------------- Fp6

Fp6 Fp6::operator*(const Fp6& o) const {
  Fp2 t0 = c0 * o.c0;
  Fp2 t1 = c1 * o.c1;
  Fp2 t2 = c2 * o.c2;
  Fp2 r0 = ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi() + t0;
  Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi();
  Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
  return {r0, r1, r2};
}

Fp6 Fp6::inverse() const {
  Fp2 t0 = c0.square() - (c1 * c2).mul_by_xi();
  Fp2 t1 = c2.square().mul_by_xi() - c0 * c1;
  Fp2 t2 = c1.square() - c0 * c2;
  Fp2 den = c0 * t0 + (c2 * t1 + c1 * t2).mul_by_xi();
  Fp2 inv = den.inverse();
  return {t0 * inv, t1 * inv, t2 * inv};
}

// ---------------------------------------------------------------- Fp12

namespace {

// gamma[k] = xi^(k (p - 1) / 6), the Frobenius twist of w^k.
struct FrobeniusCoefficients {
  std::array<Fp2, 6> gamma;
  FrobeniusCoefficients() {
    Fp2 xi{Fp::one(), Fp::one()};
    Fp2 g1 = xi.pow(exps().p_minus_1_over_6);
    gamma[0] = Fp2::one();
    for (std::size_t k = 1; k < 6; ++k) gamma[k] = gamma[k - 1] * g1;
  }
};

const FrobeniusCoefficients& frobenius_coefficients() {
  static const FrobeniusCoefficients c;
  return c;
}

}  // namespace

Fp12 Fp12::operator*(const Fp12& o) const {
  Fp6 aa = c0 * o.c0;
  Fp6 bb = c1 * o.c1;
  Fp6 cross = (c0 + c1) * (o.c0 + o.c1) - aa - bb;
  return {aa + bb.mul_by_v(), cross};
}

Fp12 Fp12::square() const {
  Fp6 ab = c0 * c1;
  Fp6 r0 = (c0 + c1) * (c0 + c1.mul_by_v()) - ab - ab.mul_by_v();
  return {r0, ab + ab};
}

Fp12 Fp12::inverse() const {
  Fp6 den = (c0.square() - c1.square().mul_by_v()).inverse();
  return {c0 * den, -(c1 * den)};
}

Fp12 Fp12::frobenius() const {
  const auto& g = frobenius_coefficients().gamma;
  // Coefficient layout: c0 = (w^0, w^2, w^4), c1 = (w^1, w^3, w^5).
  return {{c0.c0.conjugate(), c0.c1.conjugate() * g[2], c0.c2.conjugate() * g[4]},
          {c1.c0.conjugate() * g[1], c1.c1.conjugate() * g[3],
           c1.c2.conjugate() * g[5]}};
}

Fp12 Fp12::pow(std::span<const std::uint64_t> exp) const {
  return pow_impl(*this, exp, one());
}

namespace {

template <typename Fn>
void for_each_coefficient(const Fp12& f, Fn&& fn) {
  for (const Fp6* six : {&f.c0, &f.c1}) {
    for (const Fp2* two : {&six->c0, &six->c1, &six->c2}) {
      fn(two->c0);
      fn(two->c1);
    }
  }
}

}  // namespace

void Fp12::to_bytes(std::span<std::uint8_t, kGtBytes> out) const {
  std::size_t offset = 0;
  for_each_coefficient(*this, [&](const Fp& c) {
    c.to_bytes(std::span<std::uint8_t, kFpBytes>(out.data() + offset, kFpBytes));
    offset += kFpBytes;
  });
}

std::optional<Fp12> Fp12::from_bytes(std::span<const std::uint8_t, kGtBytes> in) {
  Fp12 r;
  std::size_t offset = 0;
  for (Fp6* six : {&r.c0, &r.c1}) {
    for (Fp2* two : {&six->c0, &six->c1, &six->c2}) {
      for (Fp* c : {&two->c0, &two->c1}) {
        auto v = Fp::from_bytes(
            std::span<const std::uint8_t, kFpBytes>(in.data() + offset, kFpBytes));
        if (!v) return std::nullopt;
        *c = *v;
        offset += kFpBytes;
      }
    }
  }
  return r;
}

}  // namespace mcd::bls12_381
