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


#ifndef MCD_CLIENT_FLOWS_H_
#define MCD_CLIENT_FLOWS_H_

#include <functional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcd/client/member.h"
#include "mcd/net/transport.h"
#include "mcd/wire/messages.h"

namespace mcd {

// Typed matching-server requests over a Transport. Server error responses
// are rethrown as Error with the wire code.
class MatchClient {
 public:
  explicit MatchClient(Transport& transport) : transport_(transport) {}

  void submit(const TuplePair& t);
  std::vector<TuplePair> query(const TuplePair& t);
  void remove(const TuplePair& t);
  ServerStats stats();
  void advance_phase();
  void simple_submit(const AugmentedToken& t);
  bool simple_query(const AugmentedToken& t);

 private:
  std::string call(const MatchRequest& r) { return transport_.round_trip(encode_request(r)); }
  Transport& transport_;
};

// Submission phase: one submit per contact. Returns false when a transport
// failure left some submissions unsent.
bool submit_all(DiscoveryMember& member, MatchClient& client);
// Query phase: one query per contact; records discoveries on the member.
DiscoveryOutput query_all(DiscoveryMember& member, MatchClient& client);

// Both phases. `await_query_phase` runs between them (the static server
// advances only after every member has submitted). Phase and mode errors
// from the server propagate; transport failures mark the output incomplete.
DiscoveryOutput run_static(DiscoveryMember& member, Transport& transport,
                           const std::function<void()>& await_query_phase = {});

// Dynamic mode: sends the stored-form tuple for `contact` and reports
// whether the partner's tuple came back.
bool run_dynamic_step(DiscoveryMember& member, const Identity& contact, Transport& transport);

// Sends the delete request for `contact`.
void delete_contact(DiscoveryMember& member, const Identity& contact, Transport& transport);

// Discovery report: {identity, discovered:[...], mode, incomplete}.
nlohmann::ordered_json discovery_report(const Identity& identity, const DiscoveryOutput& out,
                                        std::string_view mode);

}  // namespace mcd

#endif  // MCD_CLIENT_FLOWS_H_
