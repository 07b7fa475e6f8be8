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


// KDF-based variant: member M submits KDF(A || M) for every contact A and
// queries KDF(M || A). Anyone can build these values, which the contact probe
// below exploits.

#ifndef MCD_VARIANTS_SIMPLE_H_
#define MCD_VARIANTS_SIMPLE_H_

#include <functional>

#include "mcd/client/contact_list.h"
#include "mcd/client/flows.h"
#include "mcd/client/member.h"
#include "mcd/crypto/augmented_token.h"
#include "mcd/crypto/kdf.h"
#include "mcd/net/transport.h"

namespace mcd {

using SimpleToken = AugmentedToken;

// kdf(concat_unambiguous(a, b)). Throws Error(kInvalidArgument) when a == b.
SimpleToken simple_token(const Identity& a, const Identity& b, const KdfParams& params);

// Submits simple_token(A, M) for each visible contact A, then (after
// `await_query_phase`) queries simple_token(M, A) for every contact.
// Submission and query halves of simple_run for callers that coordinate the
// phase change themselves.
bool simple_submit_all(const Identity& member, const ContactList& contacts, MatchClient& client,
                       const KdfParams& params);
DiscoveryOutput simple_query_all(const Identity& member, const ContactList& contacts,
                                 MatchClient& client, const KdfParams& params);

DiscoveryOutput simple_run(const Identity& member, const ContactList& contacts,
                           Transport& transport, const KdfParams& params,
                           const std::function<void()>& await_query_phase = {});

// Asks the server whether simple_token(a, b) is stored, i.e. whether b listed
// a as a contact.
bool attack_contact_probe(const Identity& a, const Identity& b, Transport& transport,
                          const KdfParams& params);

}  // namespace mcd

#endif  // MCD_VARIANTS_SIMPLE_H_
