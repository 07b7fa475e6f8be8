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


#ifndef MCD_CLIENT_POINT_CACHE_H_
#define MCD_CLIENT_POINT_CACHE_H_

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "mcd/crypto/group_suite.h"

namespace mcd {

// Memoized hash_to_point results. Hashes of identities are public, so one
// cache may be shared by every actor in a process.
class PointCache {
 public:
  explicit PointCache(SuitePtr suite) : suite_(std::move(suite)) {}

  const SuitePtr& suite() const { return suite_; }
  SourcePoint get(const Identity& id, Slot slot);
  std::size_t size() const;

 private:
  struct Entry {
    std::optional<SourcePoint> slot1;
    std::optional<SourcePoint> slot2;
  };
  SuitePtr suite_;
  mutable std::mutex mu_;
  std::unordered_map<Identity, Entry> entries_;
};

}  // namespace mcd

#endif  // MCD_CLIENT_POINT_CACHE_H_
