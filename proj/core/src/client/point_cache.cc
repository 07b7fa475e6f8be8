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

#include "mcd/client/point_cache.h"

namespace mcd {

SourcePoint PointCache::get(const Identity& id, Slot slot) {
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(id);
    if (it != entries_.end()) {
      const auto& p = slot == Slot::kSlot1 ? it->second.slot1 : it->second.slot2;
      if (p) return *p;
    }
  }
  SourcePoint p = suite_->hash_to_point(id, slot);
  std::lock_guard lock(mu_);
  auto& e = entries_[id];
  (slot == Slot::kSlot1 ? e.slot1 : e.slot2) = p;
  return p;
}

std::size_t PointCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace mcd
