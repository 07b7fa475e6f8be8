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


#ifndef MCD_CLIENT_CONTACT_LIST_H_
#define MCD_CLIENT_CONTACT_LIST_H_

#include <set>

#include <nlohmann/json.hpp>

#include "mcd/crypto/identity.h"

namespace mcd {

// Visible contacts may discover the owner; hidden ones are searched for but
// never learn about the owner.
class ContactList {
 public:
  ContactList() = default;
  // Throws Error(kInvalidArgument) when the sets overlap or contain `owner`.
  ContactList(const Identity& owner, std::set<Identity> visible, std::set<Identity> hidden);

  const std::set<Identity>& visible() const { return visible_; }
  const std::set<Identity>& hidden() const { return hidden_; }
  std::set<Identity> all() const;
  bool contains(const Identity& id) const { return visible_.contains(id) || hidden_.contains(id); }
  bool is_hidden(const Identity& id) const { return hidden_.contains(id); }
  std::size_t size() const { return visible_.size() + hidden_.size(); }
  bool empty() const { return size() == 0; }

  // Contact-list file: {identity, visible:[...], hidden:[...]}.
  nlohmann::ordered_json to_json(const Identity& owner) const;
  static std::pair<Identity, ContactList> from_json(const nlohmann::json& j);

 private:
  std::set<Identity> visible_;
  std::set<Identity> hidden_;
};

}  // namespace mcd

#endif  // MCD_CLIENT_CONTACT_LIST_H_
