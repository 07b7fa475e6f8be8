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
#ifndef MCD_CRYPTO_BYTES_H_
#define MCD_CRYPTO_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcd {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

inline ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
  auto b = as_bytes(s);
  return {b.begin(), b.end()};
}

// Lowercase hex.
std::string to_hex(ByteSpan data);
// Accepts lowercase hex only; throws Error(kMalformed) otherwise.
Bytes from_hex(std::string_view hex);
bool is_lower_hex(std::string_view s, std::size_t expected_len);

// x || y where each part carries a 4-byte big-endian length prefix.
Bytes concat_unambiguous(ByteSpan x, ByteSpan y);
// Inverse of concat_unambiguous; throws Error(kMalformed) on any framing
// mismatch (truncated prefix, short body, trailing bytes).
std::pair<Bytes, Bytes> decompose_unambiguous(ByteSpan data);

void append(Bytes& out, ByteSpan data);
void append_u32_be(Bytes& out, std::uint32_t v);

// Overwrites the buffer in a way the optimizer will not elide.
void secure_zero(std::span<std::uint8_t> data);

}  // namespace mcd

#endif  // MCD_CRYPTO_BYTES_H_
