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
#ifndef MCD_CRYPTO_HASH_H_
#define MCD_CRYPTO_HASH_H_

#include <array>
#include <cstdint>
#include <initializer_list>

#include "mcd/crypto/bytes.h"

namespace mcd {

using Digest = std::array<std::uint8_t, 32>;

// SHA-256 over the concatenation of the given parts.
Digest sha256(std::initializer_list<ByteSpan> parts);
Digest hmac_sha256(ByteSpan key, std::initializer_list<ByteSpan> parts);

}  // namespace mcd

#endif  // MCD_CRYPTO_HASH_H_
