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


// Public-key directory that releases a member's key only against a gate
// value the member registered, namely the augmented token a mutual contact
// receives from the matching server.

#ifndef MCD_DIRECTORY_KEY_DIRECTORY_H_
#define MCD_DIRECTORY_KEY_DIRECTORY_H_

#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcd/authority/enrollment.h"
#include "mcd/crypto/augmented_token.h"
#include "mcd/net/transport.h"

namespace mcd {

class KeyDirectory final : public LineHandler {
 public:
  explicit KeyDirectory(EnrollmentRegistry enrollment) : enrollment_(std::move(enrollment)) {}

  // Stores the key and adds the gates to the owner's record. Throws
  // Error(kUnauthorized) on a bad proof.
  void put(const Identity& owner, Bytes pubkey, const std::vector<AugmentedToken>& gates,
           ByteSpan proof);
  // nullopt unless `token` is one of the target's gates.
  std::optional<Bytes> get(const Identity& target, const AugmentedToken& token) const;

  std::string handle(std::string_view line) override;

 private:
  struct Record {
    Bytes pubkey;
    std::unordered_set<AugmentedToken> gates;
  };
  EnrollmentRegistry enrollment_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Identity, Record> records_;
};

class DirectoryClient {
 public:
  explicit DirectoryClient(Transport& transport) : transport_(transport) {}
  void put(const Identity& owner, ByteSpan pubkey, const std::vector<AugmentedToken>& gates,
           ByteSpan proof);
  std::optional<Bytes> get(const Identity& target, const AugmentedToken& token);

 private:
  Transport& transport_;
};

}  // namespace mcd

#endif  // MCD_DIRECTORY_KEY_DIRECTORY_H_
