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

#include "mcd/authority/enrollment.h"

#include <openssl/crypto.h>

#include "mcd/error.h"

namespace mcd {

EnrollmentRegistry::EnrollmentRegistry(ByteSpan key) : key_(key.begin(), key.end()) {
  if (key_.size() != kKeyBytes) throw Error(Errc::kMalformed, "enrollment key must be 32 bytes");
}

EnrollmentRegistry EnrollmentRegistry::generate(Rng& rng) {
  return EnrollmentRegistry(rng.bytes(kKeyBytes));
}

Digest EnrollmentRegistry::secret_for(const Identity& id) const {
  return hmac_sha256(key_, {as_bytes("MCD-ENROLL-v1"), id.encoding()});
}

Digest EnrollmentRegistry::make_proof(ByteSpan enrollment_secret, std::string_view purpose,
                                      const Identity& id) {
  Bytes purpose_enc;
  append_u32_be(purpose_enc, static_cast<std::uint32_t>(purpose.size()));
  append(purpose_enc, as_bytes(purpose));
  return hmac_sha256(enrollment_secret, {as_bytes("MCD-AUTH-v1"), purpose_enc, id.encoding()});
}

bool EnrollmentRegistry::verify(const Identity& id, std::string_view purpose,
                                ByteSpan proof) const {
  if (key_.empty() || proof.size() != sizeof(Digest)) return false;
  Digest secret = secret_for(id);
  Digest expected = make_proof(secret, purpose, id);
  secure_zero(secret);
  return CRYPTO_memcmp(expected.data(), proof.data(), expected.size()) == 0;
}

}  // namespace mcd
