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


#ifndef MCD_SERVER_TUPLE_STORE_H_
#define MCD_SERVER_TUPLE_STORE_H_

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "mcd/wire/messages.h"

namespace mcd {

// Set of tuple pairs indexed by first component. Counts are maintained
// incrementally: s_c = |S| and s_mc = sum over first-component groups of
// k * (k - 1).
class TupleStore {
 public:
  // Returns false when already present.
  bool insert(const TuplePair& t);
  // Returns false when absent.
  bool erase(const TuplePair& t);
  bool contains(const TuplePair& t) const;

  // {(x, y) in S : x == t.first && y != t.second}, sorted.
  std::vector<TuplePair> matches(const TuplePair& t) const;

  ServerStats stats() const { return {size_, mc_}; }
  std::size_t size() const { return size_; }
  std::vector<TuplePair> all() const;
  // Recomputes the counts from the index.
  bool consistent() const;

  friend bool operator==(const TupleStore& a, const TupleStore& b) { return a.all() == b.all(); }

 private:
  std::unordered_map<AugmentedToken, std::set<AugmentedToken>> index_;
  std::uint64_t size_ = 0;
  std::uint64_t mc_ = 0;
};

}  // namespace mcd

#endif  // MCD_SERVER_TUPLE_STORE_H_
