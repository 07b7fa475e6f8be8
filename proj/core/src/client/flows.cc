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

#include "mcd/client/flows.h"

#include "mcd/error.h"

namespace mcd {

void MatchClient::submit(const TuplePair& t) { decode_ok(call({MatchOp::kSubmit, t.first, t.second})); }

std::vector<TuplePair> MatchClient::query(const TuplePair& t) {
  return decode_matches(call({MatchOp::kQuery, t.first, t.second}));
}

void MatchClient::remove(const TuplePair& t) { decode_ok(call({MatchOp::kDelete, t.first, t.second})); }

ServerStats MatchClient::stats() { return decode_stats(call({MatchOp::kStats, {}, {}})); }

void MatchClient::advance_phase() { decode_ok(call({MatchOp::kAdvancePhase, {}, {}})); }

void MatchClient::simple_submit(const AugmentedToken& t) {
  decode_ok(call({MatchOp::kSimpleSubmit, t, {}}));
}

bool MatchClient::simple_query(const AugmentedToken& t) {
  return decode_present(call({MatchOp::kSimpleQuery, t, {}}));
}

bool submit_all(DiscoveryMember& member, MatchClient& client) {
  bool complete = true;
  for (const Identity& contact : member.contacts().all()) {
    TuplePair t = member.make_submission(contact);
    try {
      client.submit(t);
    } catch (const Error& e) {
      if (e.code() != Errc::kTransport) throw;
      complete = false;
    }
  }
  return complete;
}

DiscoveryOutput query_all(DiscoveryMember& member, MatchClient& client) {
  DiscoveryOutput out;
  for (const Identity& contact : member.contacts().all()) {
    QueryTuple q = member.make_query(contact);
    try {
      if (process_query_response(q.expected_second, client.query(q.tuple))) {
        member.record_discovery(contact);
        out.discovered.insert(contact);
      }
    } catch (const Error& e) {
      if (e.code() != Errc::kTransport) throw;
      out.incomplete = true;
    }
  }
  return out;
}

DiscoveryOutput run_static(DiscoveryMember& member, Transport& transport,
                           const std::function<void()>& await_query_phase) {
  MatchClient client(transport);
  bool complete = submit_all(member, client);
  if (await_query_phase) await_query_phase();
  DiscoveryOutput out = query_all(member, client);
  out.incomplete = out.incomplete || !complete;
  return out;
}

bool run_dynamic_step(DiscoveryMember& member, const Identity& contact, Transport& transport) {
  MatchClient client(transport);
  QueryTuple q = member.make_query(contact);
  TuplePair stored = member.make_submission(contact);
  bool found = process_query_response(q.expected_second, client.query(stored));
  if (found) member.record_discovery(contact);
  return found;
}

void delete_contact(DiscoveryMember& member, const Identity& contact, Transport& transport) {
  MatchClient client(transport);
  client.remove(member.make_delete(contact));
}

nlohmann::ordered_json discovery_report(const Identity& identity, const DiscoveryOutput& out,
                                        std::string_view mode) {
  nlohmann::ordered_json j;
  j["identity"] = identity.value();
  j["discovered"] = nlohmann::ordered_json::array();
  for (const auto& id : out.discovered) j["discovered"].push_back(id.value());
  j["mode"] = mode;
  j["incomplete"] = out.incomplete;
  return j;
}

}  // namespace mcd
