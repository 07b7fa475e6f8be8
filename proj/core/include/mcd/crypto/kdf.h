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


// scrypt-based KDF with a tunable cost: N = 2^(cost + 1), r = 8, p = 1.

#ifndef MCD_CRYPTO_KDF_H_
#define MCD_CRYPTO_KDF_H_

#include <optional>
#include <string>
#include <string_view>

#include "mcd/crypto/bytes.h"
#include "mcd/crypto/hash.h"

namespace mcd {

enum class KdfProfile { kTest, kDemo };

std::string_view kdf_profile_name(KdfProfile p);
std::optional<KdfProfile> parse_kdf_profile(std::string_view name);

struct KdfParams {
  static constexpr unsigned kMaxCost = 20;
  // Lowest cost accepted outside the test profile.
  static constexpr unsigned kMinDemoCost = 10;
  static constexpr unsigned kDemoCost = 14;

  KdfProfile profile = KdfProfile::kTest;
  unsigned cost = 0;
  std::string domain_tag = "MCD-KDF-SIMPLE-v1";

  static KdfParams test() { return {}; }
  static KdfParams demo() { return {KdfProfile::kDemo, kDemoCost, "MCD-KDF-SIMPLE-v1"}; }

  // Throws Error(kPolicy) when the cost is outside the profile's range.
  void validate() const;
};

Digest kdf(ByteSpan input, const KdfParams& params);

}  // namespace mcd

#endif  // MCD_CRYPTO_KDF_H_
