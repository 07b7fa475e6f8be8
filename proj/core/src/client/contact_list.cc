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

#include "mcd/client/contact_list.h"

#include "mcd/error.h"

namespace mcd {

ContactList::ContactList(const Identity& owner, std::set<Identity> visible,
                         std::set<Identity> hidden)
    : visible_(std::move(visible)), hidden_(std::move(hidden)) {
  if (visible_.contains(owner) || hidden_.contains(owner)) {
    throw Error(Errc::kInvalidArgument, "a member cannot list itself as a contact");
  }
  for (const auto& id : hidden_) {
    if (visible_.contains(id)) {
      throw Error(Errc::kInvalidArgument, "contact " + id.value() + " is both visible and hidden");
    }
  }
}

std::set<Identity> ContactList::all() const {
  std::set<Identity> out = visible_;
  out.insert(hidden_.begin(), hidden_.end());
  return out;
}

nlohmann::ordered_json ContactList::to_json(const Identity& owner) const {
  nlohmann::ordered_json j;
  j["identity"] = owner.value();
  j["visible"] = nlohmann::ordered_json::array();
  for (const auto& id : visible_) j["visible"].push_back(id.value());
  j["hidden"] = nlohmann::ordered_json::array();
  for (const auto& id : hidden_) j["hidden"].push_back(id.value());
  return j;
}

std::pair<Identity, ContactList> ContactList::from_json(const nlohmann::json& j) {
  try {
    Identity owner = Identity::parse(j.at("identity").get<std::string>());
    auto read = [&](const char* key) {
      std::set<Identity> out;
      if (!j.contains(key)) return out;
      for (const auto& v : j.at(key)) out.insert(Identity::parse(v.get<std::string>()));
      return out;
    };
    return {owner, ContactList(owner, read("visible"), read("hidden"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformed, std::string("contact list: ") + e.what());
  }
}

}  // namespace mcd
