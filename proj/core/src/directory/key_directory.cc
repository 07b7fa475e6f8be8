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

#include "mcd/directory/key_directory.h"

#include <mutex>

#include "mcd/error.h"
#include "mcd/wire/messages.h"

namespace mcd {

void KeyDirectory::put(const Identity& owner, Bytes pubkey,
                       const std::vector<AugmentedToken>& gates, ByteSpan proof) {
  if (!enrollment_.verify(owner, EnrollmentRegistry::kDirectoryPut, proof)) {
    throw Error(Errc::kUnauthorized, "directory proof rejected");
  }
  std::unique_lock lock(mu_);
  Record& r = records_[owner];
  r.pubkey = std::move(pubkey);
  r.gates.insert(gates.begin(), gates.end());
}

std::optional<Bytes> KeyDirectory::get(const Identity& target, const AugmentedToken& token) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(target);
  if (it == records_.end() || !it->second.gates.contains(token)) return std::nullopt;
  return it->second.pubkey;
}

std::string KeyDirectory::handle(std::string_view line) {
  DirRequest r;
  try {
    r = decode_dir_request(line);
  } catch (const Error&) {
    return encode_error(Errc::kMalformed);
  }
  if (r.op == DirRequest::Op::kGet) {
    std::optional<Bytes> key;
    try {
      key = get(Identity::parse(r.id), r.token);
    } catch (const Error&) {
    }
    return key ? encode_key(*key) : encode_error(Errc::kDenied);
  }
  try {
    put(Identity::parse(r.id), std::move(r.key), r.gates, r.proof);
    return encode_ok();
  } catch (const Error& e) {
    return encode_error(e.code() == Errc::kUnauthorized ? Errc::kUnauthorized : Errc::kMalformed);
  }
}

void DirectoryClient::put(const Identity& owner, ByteSpan pubkey,
                          const std::vector<AugmentedToken>& gates, ByteSpan proof) {
  DirRequest r{DirRequest::Op::kPut, owner.value(), Bytes(pubkey.begin(), pubkey.end()), gates,
               Bytes(proof.begin(), proof.end()), {}};
  decode_ok(transport_.round_trip(encode_request(r)));
}

std::optional<Bytes> DirectoryClient::get(const Identity& target, const AugmentedToken& token) {
  DirRequest r{DirRequest::Op::kGet, target.value(), {}, {}, {}, token};
  return decode_dir_key(transport_.round_trip(encode_request(r)));
}

}  // namespace mcd
