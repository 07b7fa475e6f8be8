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

#include "mcd/crypto/group_suite.h"

#include <algorithm>
#include <mutex>

#include "mcd/crypto/bls12_381.h"
#include "mcd/crypto/hash.h"
#include "mcd/crypto/transparent_suite.h"
#include "mcd/error.h"

namespace mcd {

namespace b = bls12_381;

std::string_view suite_name(SuiteId id) {
  switch (id) {
    case SuiteId::kProductionPairing: return "production_pairing";
    case SuiteId::kTransparentTestPairing: return "transparent_test_pairing";
    case SuiteId::kDhGroup: return "dh_group";
  }
  return "unknown";
}

std::optional<SuiteId> parse_suite_name(std::string_view name) {
  for (SuiteId id : {SuiteId::kProductionPairing, SuiteId::kTransparentTestPairing,
                     SuiteId::kDhGroup}) {
    if (suite_name(id) == name) return id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.bytes_[kBytes - 1 - static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Scalar Scalar::from_bytes(ByteSpan be) {
  if (be.size() != kBytes) throw Error(Errc::kMalformed, "scalar must be 32 bytes");
  Scalar s;
  std::copy(be.begin(), be.end(), s.bytes_.begin());
  return s;
}

std::array<std::uint64_t, 4> Scalar::words() const {
  std::array<std::uint64_t, 4> w{};
  for (std::size_t i = 0; i < kBytes; ++i) {
    std::size_t bit = 8 * (kBytes - 1 - i);
    w[bit / 64] |= std::uint64_t{bytes_[i]} << (bit % 64);
  }
  return w;
}

bool Scalar::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

void Scalar::wipe() { secure_zero(bytes_); }

bool point_less(const SourcePoint& a, const SourcePoint& b) {
  return std::lexicographical_compare(a.encoding.begin(), a.encoding.end(),
                                      b.encoding.begin(), b.encoding.end());
}

// ---------------------------------------------------------------- GroupSuite

bool GroupSuite::pairings_equal(const SourcePoint& a1, const SourcePoint& b1,
                                const SourcePoint& a2, const SourcePoint& b2) const {
  return pair(a1, b1) == pair(a2, b2);
}

PointPair GroupSuite::hash_to_points(const Identity& id) const {
  return {hash_to_point(id, Slot::kSlot1), hash_to_point(id, Slot::kSlot2)};
}

namespace {

// Bit-serial reduction of a big-endian integer by a modulus below 2^256.
Scalar reduce_be(ByteSpan value, ByteSpan modulus_be) {
  using u64 = std::uint64_t;
  std::array<u64, 5> m{};
  for (std::size_t i = 0; i < modulus_be.size(); ++i) {
    std::size_t bit = 8 * (modulus_be.size() - 1 - i);
    m[bit / 64] |= u64{modulus_be[i]} << (bit % 64);
  }
  std::array<u64, 5> r{};
  auto geq = [&]() {
    for (int i = 4; i >= 0; --i) {
      if (r[static_cast<std::size_t>(i)] != m[static_cast<std::size_t>(i)]) {
        return r[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(i)];
      }
    }
    return true;
  };
  for (std::uint8_t byte : value) {
    for (int bit = 7; bit >= 0; --bit) {
      for (int i = 4; i > 0; --i) {
        r[static_cast<std::size_t>(i)] = (r[static_cast<std::size_t>(i)] << 1) | (r[static_cast<std::size_t>(i - 1)] >> 63);
      }
      r[0] = (r[0] << 1) | ((byte >> bit) & 1);
      if (geq()) {
        unsigned __int128 borrow = 0;
        for (std::size_t i = 0; i < 5; ++i) {
          unsigned __int128 d = static_cast<unsigned __int128>(r[i]) - m[i] - borrow;
          r[i] = static_cast<u64>(d);
          borrow = (d >> 64) & 1;
        }
      }
    }
  }
  Bytes out(Scalar::kBytes);
  for (std::size_t i = 0; i < Scalar::kBytes; ++i) {
    std::size_t bit = 8 * (Scalar::kBytes - 1 - i);
    out[i] = static_cast<std::uint8_t>(r[bit / 64] >> (bit % 64));
  }
  return Scalar::from_bytes(out);
}

}  // namespace

Scalar GroupSuite::scalar_from_wide(ByteSpan be) const {
  Scalar s = reduce_be(be, order());
  if (s.is_zero()) return Scalar::from_u64(1);
  return s;
}

Scalar GroupSuite::random_scalar(Rng& rng) const {
  Bytes wide = rng.bytes(64);
  Scalar s = scalar_from_wide(wide);
  secure_zero(wide);
  return s;
}

void GroupSuite::require(const SourcePoint& p, Slot slot) const {
  if (p.suite != id() || p.slot != slot) {
    throw Error(Errc::kSuiteMismatch, "point belongs to a different suite or slot");
  }
  if (p.encoding.size() != point_size(slot)) {
    throw Error(Errc::kMalformed, "point encoding has the wrong length");
  }
}

// ---------------------------------------------------------------- BLS12-381

namespace {

template <std::size_t N>
std::span<const std::uint8_t, N> fixed(const Bytes& b) {
  return std::span<const std::uint8_t, N>(b.data(), N);
}

class Bls12381Suite final : public GroupSuite {
 public:
  SuiteId id() const override { return SuiteId::kProductionPairing; }

  Bytes order() const override {
    Bytes out(32);
    for (std::size_t i = 0; i < 32; ++i) {
      std::size_t bit = 8 * (31 - i);
      out[i] = static_cast<std::uint8_t>(b::kOrder[bit / 64] >> (bit % 64));
    }
    return out;
  }

  std::size_t point_size(Slot slot) const override {
    return slot == Slot::kSlot1 ? b::kG1Bytes : b::kG2Bytes;
  }
  std::size_t target_size() const override { return b::kGtBytes; }

  SourcePoint generator(Slot slot) const override {
    return slot == Slot::kSlot1 ? encode1(b::g1_generator()) : encode2(b::g2_generator());
  }

  SourcePoint identity(Slot slot) const override {
    return slot == Slot::kSlot1 ? encode1(b::G1Affine{}) : encode2(b::G2Affine{});
  }

  bool is_identity(const SourcePoint& p) const override {
    return p == identity(p.slot);
  }

  SourcePoint add(const SourcePoint& x, const SourcePoint& y) const override {
    require(y, x.slot);
    if (x.slot == Slot::kSlot1) {
      return encode1(b::to_affine(b::add(b::to_jacobian(load1(x)), b::to_jacobian(load1(y)))));
    }
    return encode2(b::to_affine(b::add(b::to_jacobian(load2(x)), b::to_jacobian(load2(y)))));
  }

  SourcePoint mul(const SourcePoint& p, const Scalar& k) const override {
    auto w = k.words();
    if (p.slot == Slot::kSlot1) return encode1(b::to_affine(b::mul(b::to_jacobian(load1(p)), w)));
    return encode2(b::to_affine(b::mul(b::to_jacobian(load2(p)), w)));
  }

  SourcePoint decode_point(Slot slot, ByteSpan enc) const override {
    if (enc.size() != point_size(slot)) throw Error(Errc::kMalformed, "bad point length");
    Bytes copy(enc.begin(), enc.end());
    if (slot == Slot::kSlot1) {
      auto p = b::decode_g1(fixed<b::kG1Bytes>(copy), true);
      if (!p) throw Error(Errc::kMalformed, "invalid G1 point");
      return encode1(*p);
    }
    auto p = b::decode_g2(fixed<b::kG2Bytes>(copy), true);
    if (!p) throw Error(Errc::kMalformed, "invalid G2 point");
    return encode2(*p);
  }

  TargetElement pair(const SourcePoint& x, const SourcePoint& y) const override {
    require(x, Slot::kSlot1);
    require(y, Slot::kSlot2);
    return encode_t(b::pairing(load1(x), load2(y)));
  }

  bool pairings_equal(const SourcePoint& a1, const SourcePoint& b1, const SourcePoint& a2,
                      const SourcePoint& b2) const override {
    require(a1, Slot::kSlot1);
    require(a2, Slot::kSlot1);
    require(b1, Slot::kSlot2);
    require(b2, Slot::kSlot2);
    b::G1Affine neg = b::to_affine(b::negate(b::to_jacobian(load1(a2))));
    b::Fp12 f = b::miller_loop(load1(a1), load2(b1)) * b::miller_loop(neg, load2(b2));
    return b::final_exponentiation(f).is_one();
  }

  TargetElement target_pow(const TargetElement& t, const Scalar& k) const override {
    return encode_t(load_t(t).pow(k.words()));
  }

  TargetElement target_identity() const override { return encode_t(b::Fp12::one()); }

  TargetElement decode_target(ByteSpan enc) const override {
    if (enc.size() != b::kGtBytes) throw Error(Errc::kMalformed, "bad target length");
    TargetElement t{id(), Bytes(enc.begin(), enc.end())};
    load_t(t);
    return t;
  }

  SourcePoint hash_to_point(const Identity& ident, Slot slot) const override {
    const Bytes enc = ident.encoding();
    const SourcePoint gen = generator(slot);
    for (int ctr = 0; ctr < 256; ++ctr) {
      const std::uint8_t c = static_cast<std::uint8_t>(ctr);
      auto block = [&](std::uint8_t idx) {
        const std::uint8_t hdr[2] = {c, idx};
        return sha256({as_bytes(slot == Slot::kSlot1 ? "MCD-H1-G1-v1" : "MCD-H1-G2-v1"), hdr, enc});
      };
      auto wide = [&](std::uint8_t idx) {
        std::array<std::uint8_t, 64> w{};
        Digest d0 = block(idx);
        Digest d1 = block(static_cast<std::uint8_t>(idx + 1));
        std::copy(d0.begin(), d0.end(), w.begin());
        std::copy(d1.begin(), d1.end(), w.begin() + 32);
        return b::Fp::from_wide_bytes(w);
      };
      const bool sign = (block(0xff)[31] & 1) != 0;
      SourcePoint out;
      if (slot == Slot::kSlot1) {
        b::Fp x = wide(0);
        auto y = (x.square() * x + b::Fp::from_u64(4)).sqrt();
        if (!y) continue;
        if (y->lexicographically_largest() != sign) *y = -*y;
        b::G1 p = b::clear_cofactor(b::to_jacobian(b::G1Affine{x, *y, false}));
        if (p.is_infinity()) continue;
        out = encode1(b::to_affine(p));
      } else {
        b::Fp2 x{wide(0), wide(2)};
        b::Fp2 bb{b::Fp::from_u64(4), b::Fp::from_u64(4)};
        auto y = (x.square() * x + bb).sqrt();
        if (!y) continue;
        if (y->lexicographically_largest() != sign) *y = -*y;
        b::G2 p = b::clear_cofactor(b::to_jacobian(b::G2Affine{x, *y, false}));
        if (p.is_infinity()) continue;
        out = encode2(b::to_affine(p));
      }
      if (out == gen) continue;
      return out;
    }
    throw Error(Errc::kBrokenSuite, "hash_to_point exhausted 256 attempts");
  }

 private:
  SourcePoint encode1(const b::G1Affine& p) const {
    SourcePoint out{id(), Slot::kSlot1, Bytes(b::kG1Bytes)};
    b::encode(p, std::span<std::uint8_t, b::kG1Bytes>(out.encoding.data(), b::kG1Bytes));
    return out;
  }
  SourcePoint encode2(const b::G2Affine& p) const {
    SourcePoint out{id(), Slot::kSlot2, Bytes(b::kG2Bytes)};
    b::encode(p, std::span<std::uint8_t, b::kG2Bytes>(out.encoding.data(), b::kG2Bytes));
    return out;
  }
  TargetElement encode_t(const b::Fp12& f) const {
    TargetElement t{id(), Bytes(b::kGtBytes)};
    f.to_bytes(std::span<std::uint8_t, b::kGtBytes>(t.encoding.data(), b::kGtBytes));
    return t;
  }
  b::G1Affine load1(const SourcePoint& p) const {
    require(p, Slot::kSlot1);
    auto a = b::decode_g1(fixed<b::kG1Bytes>(p.encoding), false);
    if (!a) throw Error(Errc::kMalformed, "invalid G1 point");
    return *a;
  }
  b::G2Affine load2(const SourcePoint& p) const {
    require(p, Slot::kSlot2);
    auto a = b::decode_g2(fixed<b::kG2Bytes>(p.encoding), false);
    if (!a) throw Error(Errc::kMalformed, "invalid G2 point");
    return *a;
  }
  b::Fp12 load_t(const TargetElement& t) const {
    if (t.suite != id()) throw Error(Errc::kSuiteMismatch, "target element of another suite");
    if (t.encoding.size() != b::kGtBytes) throw Error(Errc::kMalformed, "bad target length");
    auto f = b::Fp12::from_bytes(fixed<b::kGtBytes>(t.encoding));
    if (!f) throw Error(Errc::kMalformed, "invalid target element");
    return *f;
  }
};

// ---------------------------------------------------------------- DH group

class DhGroup final : public GroupSuite {
 public:
  explicit DhGroup(SuitePtr base) : base_(std::move(base)) {}

  SuiteId id() const override { return SuiteId::kDhGroup; }
  Bytes order() const override { return base_->order(); }
  std::size_t point_size(Slot) const override { return base_->point_size(Slot::kSlot1); }
  std::size_t target_size() const override { return 0; }

  SourcePoint generator(Slot slot) const override { return wrap(base_->generator(only1(slot))); }
  SourcePoint identity(Slot slot) const override { return wrap(base_->identity(only1(slot))); }
  bool is_identity(const SourcePoint& p) const override { return base_->is_identity(unwrap(p)); }
  SourcePoint add(const SourcePoint& x, const SourcePoint& y) const override {
    return wrap(base_->add(unwrap(x), unwrap(y)));
  }
  SourcePoint mul(const SourcePoint& p, const Scalar& k) const override {
    return wrap(base_->mul(unwrap(p), k));
  }
  SourcePoint decode_point(Slot slot, ByteSpan enc) const override {
    return wrap(base_->decode_point(only1(slot), enc));
  }

  bool has_pairing() const override { return false; }
  TargetElement pair(const SourcePoint&, const SourcePoint&) const override { no_pairing(); }
  TargetElement target_pow(const TargetElement&, const Scalar&) const override { no_pairing(); }
  TargetElement target_identity() const override { no_pairing(); }
  TargetElement decode_target(ByteSpan) const override { no_pairing(); }

  SourcePoint hash_to_point(const Identity& ident, Slot slot) const override {
    return wrap(base_->hash_to_point(ident, only1(slot)));
  }

 private:
  [[noreturn]] static void no_pairing() {
    throw Error(Errc::kSuiteMismatch, "the DH group has no pairing");
  }
  static Slot only1(Slot slot) {
    if (slot != Slot::kSlot1) throw Error(Errc::kSuiteMismatch, "the DH group has one slot");
    return slot;
  }
  SourcePoint wrap(SourcePoint p) const {
    p.suite = SuiteId::kDhGroup;
    return p;
  }
  SourcePoint unwrap(SourcePoint p) const {
    require(p, Slot::kSlot1);
    p.suite = base_->id();
    return p;
  }

  SuitePtr base_;
};

}  // namespace

SuitePtr production_suite() {
  static const SuitePtr suite = std::make_shared<Bls12381Suite>();
  return suite;
}

SuitePtr make_dh_group(SuitePtr base) { return std::make_shared<DhGroup>(std::move(base)); }

SuitePtr suite_by_id(SuiteId id) {
  switch (id) {
    case SuiteId::kProductionPairing: return production_suite();
    case SuiteId::kDhGroup: {
      static const SuitePtr dh = make_dh_group(production_suite());
      return dh;
    }
    case SuiteId::kTransparentTestPairing: break;
  }
  throw Error(Errc::kPolicy, "the transparent test suite is not selectable here");
}

}  // namespace mcd
