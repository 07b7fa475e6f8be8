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
#include "mcd/crypto/bytes.h"

#include <openssl/crypto.h>

#include <limits>

#include "mcd/error.h"

namespace mcd {

std::string to_hex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

bool is_lower_hex(std::string_view s, std::size_t expected_len) {
  if (s.size() != expected_len) return false;
  for (char c : s) {
    if (nibble(c) < 0) return false;
  }
  return true;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::kMalformed, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::kMalformed, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

void append(Bytes& out, ByteSpan data) { out.insert(out.end(), data.begin(), data.end()); }

void append_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

Bytes concat_unambiguous(ByteSpan x, ByteSpan y) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (x.size() > kMax || y.size() > kMax) {
    throw Error(Errc::kInvalidArgument, "concat part exceeds 2^32-1 bytes");
  }
  Bytes out;
  out.reserve(8 + x.size() + y.size());
  append_u32_be(out, static_cast<std::uint32_t>(x.size()));
  append(out, x);
  append_u32_be(out, static_cast<std::uint32_t>(y.size()));
  append(out, y);
  return out;
}

std::pair<Bytes, Bytes> decompose_unambiguous(ByteSpan data) {
  std::size_t pos = 0;
  auto take = [&]() {
    if (data.size() - pos < 4) throw Error(Errc::kMalformed, "truncated length prefix");
    std::uint32_t len = (std::uint32_t{data[pos]} << 24) | (std::uint32_t{data[pos + 1]} << 16) |
                        (std::uint32_t{data[pos + 2]} << 8) | std::uint32_t{data[pos + 3]};
    pos += 4;
    if (data.size() - pos < len) throw Error(Errc::kMalformed, "truncated part");
    Bytes part(data.begin() + static_cast<std::ptrdiff_t>(pos),
               data.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    return part;
  };
  Bytes x = take();
  Bytes y = take();
  if (pos != data.size()) throw Error(Errc::kMalformed, "trailing bytes after parts");
  return {std::move(x), std::move(y)};
}

void secure_zero(std::span<std::uint8_t> data) { OPENSSL_cleanse(data.data(), data.size()); }

}  // namespace mcd
