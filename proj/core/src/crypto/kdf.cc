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

#include "mcd/crypto/kdf.h"

#include <openssl/evp.h>

#include "mcd/error.h"

namespace mcd {

std::string_view kdf_profile_name(KdfProfile p) {
  return p == KdfProfile::kTest ? "test" : "demo";
}

std::optional<KdfProfile> parse_kdf_profile(std::string_view name) {
  if (name == "test") return KdfProfile::kTest;
  if (name == "demo") return KdfProfile::kDemo;
  return std::nullopt;
}

void KdfParams::validate() const {
  if (cost > kMaxCost) throw Error(Errc::kPolicy, "kdf cost above maximum");
  if (profile != KdfProfile::kTest && cost < kMinDemoCost) {
    throw Error(Errc::kPolicy, "kdf cost below the minimum for this profile");
  }
  if (domain_tag.empty()) throw Error(Errc::kPolicy, "kdf domain tag must be set");
}

Digest kdf(ByteSpan input, const KdfParams& params) {
  params.validate();
  const std::uint64_t n = std::uint64_t{1} << (params.cost + 1);
  const std::uint64_t r = 8;
  const std::uint64_t p = 1;
  const std::uint64_t maxmem = 128 * r * (n + p + 2) + (1u << 20);
  Digest out{};
  auto salt = as_bytes(params.domain_tag);
  if (EVP_PBE_scrypt(reinterpret_cast<const char*>(input.data()), input.size(), salt.data(),
                     salt.size(), n, r, p, maxmem, out.data(), out.size()) != 1) {
    throw Error(Errc::kBrokenSuite, "scrypt failed");
  }
  return out;
}

}  // namespace mcd
