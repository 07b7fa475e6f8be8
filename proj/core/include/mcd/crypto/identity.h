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
#ifndef MCD_CRYPTO_IDENTITY_H_
#define MCD_CRYPTO_IDENTITY_H_

#include <compare>
#include <functional>
#include <string>
#include <string_view>

#include "mcd/crypto/bytes.h"

namespace mcd {

// Canonical user identifier (phone-number-like). Canonical form strips
// surrounding whitespace and must then be 1..64 bytes of printable UTF-8.
class Identity {
 public:
  static constexpr std::size_t kMaxBytes = 64;

  // Throws Error(kInvalidArgument) when the canonical form is invalid.
  static Identity parse(std::string_view raw);

  const std::string& value() const { return value_; }
  // 4-byte big-endian length followed by the bytes.
  Bytes encoding() const;

  // Byte-lexicographic, the global identity order.
  friend auto operator<=>(const Identity&, const Identity&) = default;
  friend bool operator==(const Identity&, const Identity&) = default;

 private:
  explicit Identity(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

}  // namespace mcd

template <>
struct std::hash<mcd::Identity> {
  std::size_t operator()(const mcd::Identity& id) const noexcept {
    return std::hash<std::string>{}(id.value());
  }
};

#endif  // MCD_CRYPTO_IDENTITY_H_
