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


// n-bit augmented tokens (n = 256): the only values the matching server sees.

#ifndef MCD_CRYPTO_AUGMENTED_TOKEN_H_
#define MCD_CRYPTO_AUGMENTED_TOKEN_H_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "mcd/crypto/bytes.h"
#include "mcd/crypto/group_suite.h"
#include "mcd/crypto/rng.h"

namespace mcd {

class AugmentedToken {
 public:
  static constexpr std::size_t kBits = 256;
  static constexpr std::size_t kBytes = kBits / 8;
  static constexpr std::size_t kHexChars = 2 * kBytes;
  using Array = std::array<std::uint8_t, kBytes>;

  AugmentedToken() = default;
  explicit AugmentedToken(const Array& bits) : bits_(bits) {}

  // Exactly 64 lowercase hex characters; throws Error(kMalformed).
  static AugmentedToken from_hex(std::string_view hex);
  static AugmentedToken random(Rng& rng);

  const Array& bits() const { return bits_; }
  std::string hex() const;

  friend auto operator<=>(const AugmentedToken&, const AugmentedToken&) = default;
  friend bool operator==(const AugmentedToken&, const AugmentedToken&) = default;

 private:
  Array bits_{};
};

// SHA-256("MCD-H2-v1" || enc(t) || enc(first) || enc(second)), where each
// enc() is length-prefixed.
AugmentedToken h2(ByteSpan token, const SourcePoint& first, const SourcePoint& second);
AugmentedToken h2(const TargetElement& t, const SourcePoint& first, const SourcePoint& second);

// h2(t, min(y, z), max(y, z)) under point_less. y and z must be slot1 points.
AugmentedToken ordered_h2(ByteSpan token, const SourcePoint& y, const SourcePoint& z);
AugmentedToken ordered_h2(const TargetElement& t, const SourcePoint& y, const SourcePoint& z);

}  // namespace mcd

template <>
struct std::hash<mcd::AugmentedToken> {
  std::size_t operator()(const mcd::AugmentedToken& t) const noexcept {
    std::size_t h = 0;
    for (std::size_t i = 0; i < sizeof(std::size_t); ++i) h = (h << 8) | t.bits()[i];
    return h;
  }
};

#endif  // MCD_CRYPTO_AUGMENTED_TOKEN_H_
