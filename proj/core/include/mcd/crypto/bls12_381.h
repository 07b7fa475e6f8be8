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

// Arithmetic on the BLS12-381 curve: base field tower, the two source groups
// and the optimal ate pairing. Serialization follows the ZCash compressed
// point format (48-byte G1, 96-byte G2).

#ifndef MCD_CRYPTO_BLS12_381_H_
#define MCD_CRYPTO_BLS12_381_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace mcd::bls12_381 {

inline constexpr std::size_t kFpBytes = 48;
inline constexpr std::size_t kG1Bytes = 48;
inline constexpr std::size_t kG2Bytes = 96;
inline constexpr std::size_t kGtBytes = 12 * kFpBytes;
inline constexpr std::size_t kScalarBytes = 32;

using Limbs = std::array<std::uint64_t, 6>;

// Little-endian 64-bit words of the subgroup order r.
inline constexpr std::array<std::uint64_t, 4> kOrder = {
    0xffffffff00000001ULL, 0x53bda402fffe5bfeULL, 0x3339d80809a1d805ULL,
    0x73eda753299d7d48ULL};

// Element of F_p in Montgomery form.
class Fp {
 public:
  constexpr Fp() = default;

  static Fp zero() { return Fp(); }
  static Fp one();
  static Fp from_u64(std::uint64_t v);
  // Canonical little-endian limbs; requires value < p.
  static Fp from_canonical(const Limbs& v);
  // Big-endian 48 bytes; nullopt when the value is not < p.
  static std::optional<Fp> from_bytes(std::span<const std::uint8_t, kFpBytes> in);
  // Reduces a big-endian 64-byte integer modulo p.
  static Fp from_wide_bytes(std::span<const std::uint8_t, 64> in);

  Limbs canonical() const;
  void to_bytes(std::span<std::uint8_t, kFpBytes> out) const;

  bool is_zero() const;
  // True when the canonical value exceeds (p - 1) / 2.
  bool lexicographically_largest() const;

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator-() const;
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp square() const { return *this * *this; }
  Fp dbl() const { return *this + *this; }

  Fp pow(std::span<const std::uint64_t> exp) const;
  Fp inverse() const;
  std::optional<Fp> sqrt() const;

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }

 private:
  explicit constexpr Fp(const Limbs& mont) : v_(mont) {}
  Limbs v_{};
};

// F_p[u] / (u^2 + 1).
struct Fp2 {
  Fp c0;
  Fp c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool lexicographically_largest() const;

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2 operator*(const Fp2& o) const;
  Fp2 operator*(const Fp& o) const { return {c0 * o, c1 * o}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2 square() const;
  Fp2 dbl() const { return *this + *this; }
  Fp2 conjugate() const { return {c0, -c1}; }
  // Multiplication by the sextic non-residue xi = 1 + u.
  Fp2 mul_by_xi() const { return {c0 - c1, c0 + c1}; }

  Fp2 pow(std::span<const std::uint64_t> exp) const;
  Fp2 inverse() const;
  std::optional<Fp2> sqrt() const;

  friend bool operator==(const Fp2& a, const Fp2& b) {
    return a.c0 == b.c0 && a.c1 == b.c1;
  }
};

// F_p2[v] / (v^3 - xi).
struct Fp6 {
  Fp2 c0;
  Fp2 c1;
  Fp2 c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  Fp6 operator*(const Fp6& o) const;
  Fp6 square() const { return *this * *this; }
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const;

  friend bool operator==(const Fp6& a, const Fp6& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }
};

// F_p6[w] / (w^2 - v). The pairing target group lives here.
struct Fp12 {
  Fp6 c0;
  Fp6 c1;

  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }
  bool is_one() const { return *this == one(); }

  Fp12 operator*(const Fp12& o) const;
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
  Fp12 square() const;
  Fp12 conjugate() const { return {c0, -c1}; }
  Fp12 inverse() const;
  Fp12 frobenius() const;
  Fp12 pow(std::span<const std::uint64_t> exp) const;

  void to_bytes(std::span<std::uint8_t, kGtBytes> out) const;
  static std::optional<Fp12> from_bytes(std::span<const std::uint8_t, kGtBytes> in);

  friend bool operator==(const Fp12& a, const Fp12& b) {
    return a.c0 == b.c0 && a.c1 == b.c1;
  }
};

// Short Weierstrass point y^2 = x^3 + b in Jacobian coordinates; z == 0 is
// the point at infinity.
template <typename F>
struct Jacobian {
  F x;
  F y;
  F z;

  bool is_infinity() const { return z.is_zero(); }
};

template <typename F>
struct Affine {
  F x;
  F y;
  bool infinity = true;

  friend bool operator==(const Affine& a, const Affine& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

using G1 = Jacobian<Fp>;
using G2 = Jacobian<Fp2>;
using G1Affine = Affine<Fp>;
using G2Affine = Affine<Fp2>;

const G1Affine& g1_generator();
const G2Affine& g2_generator();

G1 to_jacobian(const G1Affine& p);
G2 to_jacobian(const G2Affine& p);
G1Affine to_affine(const G1& p);
G2Affine to_affine(const G2& p);

G1 add(const G1& a, const G1& b);
G2 add(const G2& a, const G2& b);
G1 dbl(const G1& a);
G2 dbl(const G2& a);
G1 negate(const G1& a);
G2 negate(const G2& a);
// Little-endian 64-bit word scalar; any length.
G1 mul(const G1& p, std::span<const std::uint64_t> scalar);
G2 mul(const G2& p, std::span<const std::uint64_t> scalar);

bool on_curve(const G1Affine& p);
bool on_curve(const G2Affine& p);
bool in_subgroup(const G1Affine& p);
bool in_subgroup(const G2Affine& p);

G1 clear_cofactor(const G1& p);
G2 clear_cofactor(const G2& p);

void encode(const G1Affine& p, std::span<std::uint8_t, kG1Bytes> out);
void encode(const G2Affine& p, std::span<std::uint8_t, kG2Bytes> out);
// Decompression checks the curve equation and, when requested, membership in
// the order-r subgroup.
std::optional<G1Affine> decode_g1(std::span<const std::uint8_t, kG1Bytes> in,
                                  bool check_subgroup);
std::optional<G2Affine> decode_g2(std::span<const std::uint8_t, kG2Bytes> in,
                                  bool check_subgroup);

Fp12 miller_loop(const G1Affine& p, const G2Affine& q);
Fp12 final_exponentiation(const Fp12& f);
Fp12 pairing(const G1Affine& p, const G2Affine& q);

}  // namespace mcd::bls12_381

#endif  // MCD_CRYPTO_BLS12_381_H_
