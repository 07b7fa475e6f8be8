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


#ifndef MCD_AUTHORITY_ENROLLMENT_H_
#define MCD_AUTHORITY_ENROLLMENT_H_

#include <array>
#include <string_view>

#include "mcd/crypto/bytes.h"
#include "mcd/crypto/hash.h"
#include "mcd/crypto/identity.h"
#include "mcd/crypto/rng.h"

namespace mcd {

// Stand-in for the operator-side identity check. Each identity has an
// enrollment secret derived from a registry key; the secret reaches its owner
// out of band, and the owner proves possession with an HMAC bound to a
// purpose string.
class EnrollmentRegistry {
 public:
  static constexpr std::size_t kKeyBytes = 32;

  static constexpr std::string_view kIssue = "issue";
  static constexpr std::string_view kKeyServerEnroll = "ks_enroll";
  static constexpr std::string_view kDirectoryPut = "dir_put";

  EnrollmentRegistry() = default;
  explicit EnrollmentRegistry(ByteSpan key);
  static EnrollmentRegistry generate(Rng& rng);

  const Bytes& key() const { return key_; }
  Digest secret_for(const Identity& id) const;
  bool verify(const Identity& id, std::string_view purpose, ByteSpan proof) const;

  static Digest make_proof(ByteSpan enrollment_secret, std::string_view purpose,
                           const Identity& id);

 private:
  Bytes key_;
};

}  // namespace mcd

#endif  // MCD_AUTHORITY_ENROLLMENT_H_
