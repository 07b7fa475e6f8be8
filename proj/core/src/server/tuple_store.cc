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

#include "mcd/server/tuple_store.h"

#include <algorithm>

namespace mcd {

bool TupleStore::insert(const TuplePair& t) {
  auto& group = index_[t.first];
  const std::uint64_t k = group.size();
  if (!group.insert(t.second).second) return false;
  ++size_;
  mc_ += 2 * k;
  return true;
}

bool TupleStore::erase(const TuplePair& t) {
  auto it = index_.find(t.first);
  if (it == index_.end() || it->second.erase(t.second) == 0) return false;
  const std::uint64_t k = it->second.size();
  --size_;
  mc_ -= 2 * k;
  if (it->second.empty()) index_.erase(it);
  return true;
}

bool TupleStore::contains(const TuplePair& t) const {
  auto it = index_.find(t.first);
  return it != index_.end() && it->second.contains(t.second);
}

std::vector<TuplePair> TupleStore::matches(const TuplePair& t) const {
  std::vector<TuplePair> out;
  auto it = index_.find(t.first);
  if (it == index_.end()) return out;
  for (const auto& second : it->second) {
    if (second != t.second) out.push_back({t.first, second});
  }
  return out;
}

std::vector<TuplePair> TupleStore::all() const {
  std::vector<TuplePair> out;
  out.reserve(size_);
  for (const auto& [first, seconds] : index_) {
    for (const auto& second : seconds) out.push_back({first, second});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool TupleStore::consistent() const {
  std::uint64_t size = 0;
  std::uint64_t mc = 0;
  for (const auto& [first, seconds] : index_) {
    if (seconds.empty()) return false;
    size += seconds.size();
    mc += seconds.size() * (seconds.size() - 1);
  }
  return size == size_ && mc == mc_;
}

}  // namespace mcd
