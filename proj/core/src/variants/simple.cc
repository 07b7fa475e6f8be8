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

#include "mcd/variants/simple.h"

#include "mcd/client/flows.h"
#include "mcd/error.h"

namespace mcd {

SimpleToken simple_token(const Identity& a, const Identity& b, const KdfParams& params) {
  if (a == b) throw Error(Errc::kInvalidArgument, "simple_token needs two distinct identities");
  return SimpleToken(kdf(concat_unambiguous(as_bytes(a.value()), as_bytes(b.value())), params));
}

bool simple_submit_all(const Identity& member, const ContactList& contacts, MatchClient& client,
                       const KdfParams& params) {
  bool complete = true;
  for (const Identity& contact : contacts.visible()) {
    try {
      client.simple_submit(simple_token(contact, member, params));
    } catch (const Error& e) {
      if (e.code() != Errc::kTransport) throw;
      complete = false;
    }
  }
  return complete;
}

DiscoveryOutput simple_query_all(const Identity& member, const ContactList& contacts,
                                 MatchClient& client, const KdfParams& params) {
  DiscoveryOutput out;
  for (const Identity& contact : contacts.all()) {
    try {
      if (client.simple_query(simple_token(member, contact, params))) out.discovered.insert(contact);
    } catch (const Error& e) {
      if (e.code() != Errc::kTransport) throw;
      out.incomplete = true;
    }
  }
  return out;
}

DiscoveryOutput simple_run(const Identity& member, const ContactList& contacts,
                           Transport& transport, const KdfParams& params,
                           const std::function<void()>& await_query_phase) {
  MatchClient client(transport);
  bool complete = simple_submit_all(member, contacts, client, params);
  if (await_query_phase) await_query_phase();
  DiscoveryOutput out = simple_query_all(member, contacts, client, params);
  out.incomplete = out.incomplete || !complete;
  return out;
}

bool attack_contact_probe(const Identity& a, const Identity& b, Transport& transport,
                          const KdfParams& params) {
  MatchClient client(transport);
  return client.simple_query(simple_token(a, b, params));
}

}  // namespace mcd
