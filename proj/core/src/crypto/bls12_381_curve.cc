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

constexpr std::array<u64, 2> kG1Cofactor = {0x8c00aaab0000aaabULL,
                                            0x396c8c005555e156ULL};
constexpr std::array<u64, 8> kG2Cofactor = {
    0xcf1c38e31c7238e5ULL, 0x1616ec6e786f0c70ULL, 0x21537e293a6691aeULL,
    0xa628f1cb4d9e82efULL, 0xa68a205b2e5a7ddfULL, 0xcd91de4547085abaULL,
    0x091d50792876a202ULL, 0x05d543a95414e7f1ULL};

// |x| for the curve parameter x = -0xd201000000010000.
constexpr u64 kAbsX = 0xd201000000010000ULL;

constexpr std::uint8_t kCompressedFlag = 0x80;
constexpr std::uint8_t kInfinityFlag = 0x40;
constexpr std::uint8_t kSignFlag = 0x20;

Fp parse_fp(const char* hex) {
  Limbs l{};
  std::size_t len = std::char_traits<char>::length(hex);
  for (std::size_t i = 0; i < len; ++i) {
    char c = hex[len - 1 - i];
    u64 nib = (c >= '0' && c <= '9') ? static_cast<u64>(c - '0')
                                     : static_cast<u64>(c - 'a' + 10);
    l[i / 16] |= nib << (4 * (i % 16));
  }
  return Fp::from_canonical(l);
}

const Fp& g1_b() {
  static const Fp b = Fp::from_u64(4);
  return b;
}

const Fp2& g2_b() {
  static const Fp2 b{Fp::from_u64(4), Fp::from_u64(4)};
  return b;
}

template <typename F>
Jacobian<F> infinity() {
  if constexpr (std::is_same_v<F, Fp>) {
    return {Fp::one(), Fp::one(), Fp::zero()};
  } else {
    return {Fp2::one(), Fp2::one(), Fp2::zero()};
  }
}

template <typename F>
F field_one() {
  if constexpr (std::is_same_v<F, Fp>) {
    return Fp::one();
  } else {
    return Fp2::one();
  }
}

template <typename F>
Jacobian<F> dbl_impl(const Jacobian<F>& p) {
  if (p.is_infinity() || p.y.is_zero()) return infinity<F>();
  F a = p.x.square();
  F b = p.y.square();
  F c = b.square();
  F d = ((p.x + b).square() - a - c).dbl();
  F e = a.dbl() + a;
  F f = e.square();
  F x3 = f - d.dbl();
  F c8 = c.dbl().dbl().dbl();
  F y3 = e * (d - x3) - c8;
  F z3 = (p.y * p.z).dbl();
  return {x3, y3, z3};
}

template <typename F>
Jacobian<F> add_impl(const Jacobian<F>& p, const Jacobian<F>& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  F z1z1 = p.z.square();
  F z2z2 = q.z.square();
  F u1 = p.x * z2z2;
  F u2 = q.x * z1z1;
  F s1 = p.y * q.z * z2z2;
  F s2 = q.y * p.z * z1z1;
  F h = u2 - u1;
  F r = (s2 - s1).dbl();
  if (h.is_zero()) {
    if (r.is_zero()) return dbl_impl(p);
    return infinity<F>();
  }
  F i = h.dbl().square();
  F j = h * i;
  F v = u1 * i;
  F x3 = r.square() - j - v.dbl();
  F y3 = r * (v - x3) - (s1 * j).dbl();
  F z3 = ((p.z + q.z).square() - z1z1 - z2z2) * h;
  return {x3, y3, z3};
}

template <typename F>
Jacobian<F> mul_impl(const Jacobian<F>& p, std::span<const u64> scalar) {
  Jacobian<F> acc = infinity<F>();
  for (std::size_t i = scalar.size(); i-- > 0;) {
    for (int bit = 63; bit >= 0; --bit) {
      acc = dbl_impl(acc);
      if ((scalar[i] >> bit) & 1) acc = add_impl(acc, p);
    }
  }
  return acc;
}

template <typename F>
Affine<F> to_affine_impl(const Jacobian<F>& p) {
  if (p.is_infinity()) return {};
  F zinv = p.z.inverse();
  F zinv2 = zinv.square();
  return {p.x * zinv2, p.y * zinv2 * zinv, false};
}

template <typename F>
Jacobian<F> to_jacobian_impl(const Affine<F>& p) {
  if (p.infinity) return infinity<F>();
  return {p.x, p.y, field_one<F>()};
}

}  // namespace

const G1Affine& g1_generator() {
  static const G1Affine g{
      parse_fp("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb"),
      parse_fp("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1"),
      false};
  return g;
}

const G2Affine& g2_generator() {
  static const G2Affine g{
      {parse_fp("024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8"),
       parse_fp("13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e")},
      {parse_fp("0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c923ac9cc3baca289e193548608b82801"),
       parse_fp("0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be")},
      false};
  return g;
}

G1 to_jacobian(const G1Affine& p) { return to_jacobian_impl(p); }
G2 to_jacobian(const G2Affine& p) { return to_jacobian_impl(p); }
G1Affine to_affine(const G1& p) { return to_affine_impl(p); }
G2Affine to_affine(const G2& p) { return to_affine_impl(p); }

G1 add(const G1& a, const G1& b) { return add_impl(a, b); }
G2 add(const G2& a, const G2& b) { return add_impl(a, b); }
G1 dbl(const G1& a) { return dbl_impl(a); }
G2 dbl(const G2& a) { return dbl_impl(a); }
G1 negate(const G1& a) { return {a.x, -a.y, a.z}; }
G2 negate(const G2& a) { return {a.x, -a.y, a.z}; }
G1 mul(const G1& p, std::span<const std::uint64_t> s) { return mul_impl(p, s); }
G2 mul(const G2& p, std::span<const std::uint64_t> s) { return mul_impl(p, s); }

bool on_curve(const G1Affine& p) {
  if (p.infinity) return true;
  return p.y.square() == p.x.square() * p.x + g1_b();
}

bool on_curve(const G2Affine& p) {
  if (p.infinity) return true;
  return p.y.square() == p.x.square() * p.x + g2_b();
}

bool in_subgroup(const G1Affine& p) {
  return on_curve(p) && mul(to_jacobian(p), kOrder).is_infinity();
}

bool in_subgroup(const G2Affine& p) {
  return on_curve(p) && mul(to_jacobian(p), kOrder).is_infinity();
}

G1 clear_cofactor(const G1& p) { return mul(p, kG1Cofactor); }
G2 clear_cofactor(const G2& p) { return mul(p, kG2Cofactor); }

void encode(const G1Affine& p, std::span<std::uint8_t, kG1Bytes> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) {
    out[0] = kCompressedFlag | kInfinityFlag;
    return;
  }
  p.x.to_bytes(out);
  out[0] |= kCompressedFlag;
  if (p.y.lexicographically_largest()) out[0] |= kSignFlag;
}

void encode(const G2Affine& p, std::span<std::uint8_t, kG2Bytes> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) {
    out[0] = kCompressedFlag | kInfinityFlag;
    return;
  }
  p.x.c1.to_bytes(std::span<std::uint8_t, kFpBytes>(out.data(), kFpBytes));
  p.x.c0.to_bytes(std::span<std::uint8_t, kFpBytes>(out.data() + kFpBytes, kFpBytes));
  out[0] |= kCompressedFlag;
  if (p.y.lexicographically_largest()) out[0] |= kSignFlag;
}

namespace {

// Returns the flag byte stripped of its three flag bits, or nullopt for a
// malformed flag combination. Sets `infinity` for a canonical infinity
// encoding.
template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> strip_flags(
    std::span<const std::uint8_t, N> in, bool& infinity, bool& sign) {
  std::uint8_t flags = in[0];
  if ((flags & kCompressedFlag) == 0) return std::nullopt;
  infinity = (flags & kInfinityFlag) != 0;
  sign = (flags & kSignFlag) != 0;
  std::array<std::uint8_t, N> body{};
  std::copy(in.begin(), in.end(), body.begin());
  body[0] &= 0x1f;
  if (infinity) {
    if (sign || std::any_of(body.begin(), body.end(), [](std::uint8_t b) { return b != 0; })) {
      return std::nullopt;
    }
  }
  return body;
}

}  // namespace

std::optional<G1Affine> decode_g1(std::span<const std::uint8_t, kG1Bytes> in,
                                  bool check_subgroup) {
  bool inf = false;
  bool sign = false;
  auto body = strip_flags<kG1Bytes>(in, inf, sign);
  if (!body) return std::nullopt;
  if (inf) return G1Affine{};
  auto x = Fp::from_bytes(*body);
  if (!x) return std::nullopt;
  auto y = (x->square() * *x + g1_b()).sqrt();
  if (!y) return std::nullopt;
  if (y->lexicographically_largest() != sign) *y = -*y;
  G1Affine p{*x, *y, false};
  if (check_subgroup && !in_subgroup(p)) return std::nullopt;
  return p;
}

std::optional<G2Affine> decode_g2(std::span<const std::uint8_t, kG2Bytes> in,
                                  bool check_subgroup) {
  bool inf = false;
  bool sign = false;
  auto body = strip_flags<kG2Bytes>(in, inf, sign);
  if (!body) return std::nullopt;
  if (inf) return G2Affine{};
  auto c1 = Fp::from_bytes(std::span<const std::uint8_t, kFpBytes>(body->data(), kFpBytes));
  auto c0 = Fp::from_bytes(
      std::span<const std::uint8_t, kFpBytes>(body->data() + kFpBytes, kFpBytes));
  if (!c0 || !c1) return std::nullopt;
  Fp2 x{*c0, *c1};
  auto y = (x.square() * x + g2_b()).sqrt();
  if (!y) return std::nullopt;
  if (y->lexicographically_largest() != sign) *y = -*y;
  G2Affine p{x, *y, false};
  if (check_subgroup && !in_subgroup(p)) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------- pairing

namespace {

// Lines are untwisted, evaluated at P and scaled by a factor from a proper
// subfield (removed by the final exponentiation), leaving the sparse shape
//   c0 + c2 w^2 + c3 w^3  with c3 in F_p.
Fp12 sparse_line(const Fp2& c0, const Fp2& c2, const Fp2& c3) {
  Fp12 l;
  l.c0.c0 = c0;
  l.c0.c1 = c2;
  l.c1.c1 = c3;
  return l;
}

// Homogeneous projective point on the twist, x = X/Z, y = Y/Z.
struct TwistPoint {
  Fp2 x;
  Fp2 y;
  Fp2 z;
};

// T <- 2T; returns the tangent line at T evaluated at P.
Fp12 double_step(TwistPoint& t, const G1Affine& p) {
  Fp2 xx = t.x.square();
  Fp2 w = xx.dbl() + xx;  // 3X^2
  Fp2 s = t.y * t.z;
  Fp2 b = t.x * t.y * s;
  Fp2 h = w.square() - b.dbl().dbl().dbl();
  Fp2 yy = t.y.square();
  Fp2 zz = t.z.square();
  // 2 Y Z^2 times the affine line (lambda x_T - y_T) - lambda x_P w^2 + y_P w^3.
  Fp12 line = sparse_line(w * t.x - (yy * t.z).dbl(), -(w * t.z * p.x),
                          (t.y * zz).dbl() * p.y);
  Fp2 ss = s.square();
  t.x = (h * s).dbl();
  t.y = w * (b.dbl().dbl() - h) - (yy * ss).dbl().dbl().dbl();
  t.z = (ss * s).dbl().dbl().dbl();
  return line;
}

// T <- T + Q; returns the chord through T and Q evaluated at P.
Fp12 add_step(TwistPoint& t, const G2Affine& q, const G1Affine& p) {
  Fp2 theta = q.y * t.z - t.y;
  Fp2 delta = q.x * t.z - t.x;
  Fp12 line = sparse_line(theta * q.x - delta * q.y, -(theta * p.x),
                          delta * p.y);
  Fp2 dd = delta.square();
  Fp2 ddd = dd * delta;
  Fp2 dd_x = dd * t.x;
  Fp2 a = theta.square() * t.z - ddd - dd_x.dbl();
  t.x = delta * a;
  t.y = theta * (dd_x - a) - ddd * t.y;
  t.z = ddd * t.z;
  return line;
}

}  // namespace

Fp12 miller_loop(const G1Affine& p, const G2Affine& q) {
  if (p.infinity || q.infinity) return Fp12::one();
  Fp12 f = Fp12::one();
  TwistPoint t{q.x, q.y, Fp2::one()};
  for (int bit = 62; bit >= 0; --bit) {
    f = f.square() * double_step(t, p);
    if ((kAbsX >> bit) & 1) f = f * add_step(t, q, p);
  }
  // The loop parameter is negative.
  return f.conjugate();
}

namespace {

Fp12 exp_by_x(const Fp12& f) {
  constexpr std::array<u64, 1> e = {kAbsX};
  return f.pow(e).conjugate();
}

}  // namespace

Fp12 final_exponentiation(const Fp12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 t = f.conjugate() * f.inverse();
  Fp12 a = t.frobenius().frobenius() * t;
  // Hard part, raised to 3 (p^4 - p^2 + 1) / r
  //   = (x - 1)^2 (x + p) (x^2 + p^2 - 1) + 3.
  Fp12 t0 = exp_by_x(a) * a.conjugate();
  Fp12 t1 = exp_by_x(t0) * t0.conjugate();
  Fp12 t2 = exp_by_x(t1) * t1.frobenius();
  Fp12 t3 = exp_by_x(exp_by_x(t2)) * t2.frobenius().frobenius() * t2.conjugate();
  return t3 * a.square() * a;
}

Fp12 pairing(const G1Affine& p, const G2Affine& q) {
  return final_exponentiation(miller_loop(p, q));
}

}  // namespace mcd::bls12_381
