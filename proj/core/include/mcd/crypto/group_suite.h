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
// Group and pairing abstraction shared by all protocol variants. Points and
// target elements are carried as canonical fixed-length encodings; those
// encodings are also the wire and file representations.

#ifndef MCD_CRYPTO_GROUP_SUITE_H_
#define MCD_CRYPTO_GROUP_SUITE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "mcd/crypto/bytes.h"
#include "mcd/crypto/identity.h"
#include "mcd/crypto/rng.h"

namespace mcd {

enum class SuiteId { kProductionPairing, kTransparentTestPairing, kDhGroup };

std::string_view suite_name(SuiteId id);
std::optional<SuiteId> parse_suite_name(std::string_view name);

enum class Slot { kSlot1, kSlot2 };

// Big-endian 256-bit scalar. Suites reduce it modulo their order on use.
class Scalar {
 public:
  static constexpr std::size_t kBytes = 32;

  Scalar() = default;
  static Scalar from_u64(std::uint64_t v);
  // Exactly 32 big-endian bytes.
  static Scalar from_bytes(ByteSpan be);

  const std::array<std::uint8_t, kBytes>& bytes() const { return bytes_; }
  // Little-endian 64-bit words.
  std::array<std::uint64_t, 4> words() const;
  bool is_zero() const;
  void wipe();

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::array<std::uint8_t, kBytes> bytes_{};
};

struct SourcePoint {
  SuiteId suite = SuiteId::kProductionPairing;
  Slot slot = Slot::kSlot1;
  Bytes encoding;

  friend bool operator==(const SourcePoint&, const SourcePoint&) = default;
};

// Lexicographic on canonical encodings; the global point order used to make
// augmented tokens symmetric.
bool point_less(const SourcePoint& a, const SourcePoint& b);

struct TargetElement {
  SuiteId suite = SuiteId::kProductionPairing;
  Bytes encoding;

  friend bool operator==(const TargetElement&, const TargetElement&) = default;
};

struct PointPair {
  SourcePoint slot1;
  SourcePoint slot2;
};

class GroupSuite {
 public:
  virtual ~GroupSuite() = default;

  virtual SuiteId id() const = 0;
  // Big-endian group order q.
  virtual Bytes order() const = 0;
  virtual std::size_t point_size(Slot slot) const = 0;
  virtual std::size_t target_size() const = 0;

  virtual SourcePoint generator(Slot slot) const = 0;
  virtual SourcePoint identity(Slot slot) const = 0;
  virtual bool is_identity(const SourcePoint& p) const = 0;
  virtual SourcePoint add(const SourcePoint& a, const SourcePoint& b) const = 0;
  virtual SourcePoint mul(const SourcePoint& p, const Scalar& k) const = 0;
  // Parses and validates an encoding (curve and subgroup membership).
  // Throws Error(kMalformed).
  virtual SourcePoint decode_point(Slot slot, ByteSpan encoding) const = 0;

  virtual bool has_pairing() const { return true; }
  // Throws Error(kSuiteMismatch) for points of another suite or slot.
  virtual TargetElement pair(const SourcePoint& a, const SourcePoint& b) const = 0;
  virtual TargetElement target_pow(const TargetElement& t, const Scalar& k) const = 0;
  virtual TargetElement target_identity() const = 0;
  virtual TargetElement decode_target(ByteSpan encoding) const = 0;
  // pair(a1, b1) == pair(a2, b2).
  virtual bool pairings_equal(const SourcePoint& a1, const SourcePoint& b1,
                              const SourcePoint& a2, const SourcePoint& b2) const;

  // Deterministic try-and-increment hash; never returns the identity element
  // or the published generator of that slot.
  virtual SourcePoint hash_to_point(const Identity& id, Slot slot) const = 0;
  PointPair hash_to_points(const Identity& id) const;

  // Reduces a big-endian integer modulo q; zero maps to one.
  Scalar scalar_from_wide(ByteSpan be) const;
  // Uniform scalar in [1, q-1].
  Scalar random_scalar(Rng& rng) const;

 protected:
  void require(const SourcePoint& p, Slot slot) const;
};

using SuitePtr = std::shared_ptr<const GroupSuite>;

// BLS12-381: slot1 = G1, slot2 = G2, target = GT.
SuitePtr production_suite();

// Prime-order group used only for Diffie-Hellman: the slot1 group of the
// base suite with pairing operations disabled. Points carry SuiteId::kDhGroup.
SuitePtr make_dh_group(SuitePtr base);

SuitePtr suite_by_id(SuiteId id);

}  // namespace mcd

#endif  // MCD_CRYPTO_GROUP_SUITE_H_
