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
#include "mcd/crypto/hash.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <memory>

#include "mcd/error.h"

namespace mcd {

Digest sha256(std::initializer_list<ByteSpan> parts) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::kBrokenSuite, "sha256 init failed");
  }
  for (ByteSpan p : parts) EVP_DigestUpdate(ctx.get(), p.data(), p.size());
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), out.data(), &len);
  return out;
}

Digest hmac_sha256(ByteSpan key, std::initializer_list<ByteSpan> parts) {
  Bytes msg;
  for (ByteSpan p : parts) append(msg, p);
  Digest out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(),
           out.data(), &len) == nullptr) {
    throw Error(Errc::kBrokenSuite, "hmac failed");
  }
  return out;
}

}  // namespace mcd
