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

#include "mcd/crypto/augmented_token.h"

#include <algorithm>

#include "mcd/crypto/hash.h"
#include "mcd/error.h"

namespace mcd {

AugmentedToken AugmentedToken::from_hex(std::string_view hex) {
  if (!is_lower_hex(hex, kHexChars)) {
    throw Error(Errc::kMalformed, "augmented token must be 64 lowercase hex characters");
  }
  Bytes raw = mcd::from_hex(hex);
  Array bits{};
  std::copy(raw.begin(), raw.end(), bits.begin());
  return AugmentedToken(bits);
}

AugmentedToken AugmentedToken::random(Rng& rng) {
  Array bits{};
  rng.fill(bits);
  return AugmentedToken(bits);
}

std::string AugmentedToken::hex() const { return to_hex(bits_); }

namespace {

Bytes prefixed(ByteSpan data) {
  Bytes out;
  out.reserve(data.size() + 4);
  append_u32_be(out, static_cast<std::uint32_t>(data.size()));
  append(out, data);
  return out;
}

void require_slot1(const SourcePoint& p) {
  if (p.slot != Slot::kSlot1) throw Error(Errc::kSuiteMismatch, "augmented tokens use slot1 points");
}

}  // namespace

AugmentedToken h2(ByteSpan token, const SourcePoint& first, const SourcePoint& second) {
  Digest d = sha256({as_bytes("MCD-H2-v1"), prefixed(token), prefixed(first.encoding),
                     prefixed(second.encoding)});
  return AugmentedToken(d);
}

AugmentedToken h2(const TargetElement& t, const SourcePoint& first, const SourcePoint& second) {
  return h2(t.encoding, first, second);
}

AugmentedToken ordered_h2(ByteSpan token, const SourcePoint& y, const SourcePoint& z) {
  require_slot1(y);
  require_slot1(z);
  if (point_less(z, y)) return h2(token, z, y);
  return h2(token, y, z);
}

AugmentedToken ordered_h2(const TargetElement& t, const SourcePoint& y, const SourcePoint& z) {
  return ordered_h2(ByteSpan(t.encoding), y, z);
}

}  // namespace mcd
