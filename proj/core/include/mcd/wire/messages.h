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


// Newline-delimited JSON messages for the matching server, the key server and
// the key directory. Every request travels on its own connection; requests
// carry no sender identifier.

#ifndef MCD_WIRE_MESSAGES_H_
#define MCD_WIRE_MESSAGES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcd/crypto/augmented_token.h"
#include "mcd/error.h"

namespace mcd {

struct TuplePair {
  AugmentedToken first;
  AugmentedToken second;

  friend auto operator<=>(const TuplePair&, const TuplePair&) = default;
  friend bool operator==(const TuplePair&, const TuplePair&) = default;
};

// ---------------------------------------------------------------- matching

enum class MatchOp { kSubmit, kQuery, kDelete, kStats, kAdvancePhase, kSimpleSubmit, kSimpleQuery };

std::string_view match_op_name(MatchOp op);

// Everything a matching-server handler learns about a request. Simple-variant
// ops carry their single token in t1; ops without tokens leave both zero.
struct MatchRequest {
  MatchOp op;
  AugmentedToken t1;
  AugmentedToken t2;
};

struct ServerStats {
  std::uint64_t s_c = 0;
  std::uint64_t s_mc = 0;

  friend bool operator==(const ServerStats&, const ServerStats&) = default;
};

std::string encode_request(const MatchRequest& r);
// Throws Error(kMalformed) on unknown ops, missing or extra fields, or tokens
// that are not 64 lowercase hex characters.
MatchRequest decode_match_request(std::string_view line);

std::string encode_ok();
std::string encode_error(Errc code);
std::string encode_matches(const std::vector<TuplePair>& matches);
std::string encode_stats(const ServerStats& s);
std::string encode_present(bool present);

// Client-side decoders. A response of the form {"err":name} is rethrown as
// Error with the matching code.
void decode_ok(std::string_view line);
std::vector<TuplePair> decode_matches(std::string_view line);
ServerStats decode_stats(std::string_view line);
bool decode_present(std::string_view line);

// ---------------------------------------------------------------- key server

struct KeyRequest {
  enum class Op { kGetKey, kEnroll } op;
  std::string id;
  Bytes key;
  Bytes proof;
};

std::string encode_request(const KeyRequest& r);
KeyRequest decode_key_request(std::string_view line);
std::string encode_key(ByteSpan key);
Bytes decode_key(std::string_view line);

// ---------------------------------------------------------------- directory

struct DirRequest {
  enum class Op { kPut, kGet } op;
  std::string id;
  Bytes key;
  std::vector<AugmentedToken> gates;
  Bytes proof;
  AugmentedToken token;
};

std::string encode_request(const DirRequest& r);
DirRequest decode_dir_request(std::string_view line);
// Returns nullopt for {"err":"denied"}.
std::optional<Bytes> decode_dir_key(std::string_view line);

// ---------------------------------------------------------------- helpers

// Parses one JSON object; throws Error(kMalformed).
nlohmann::json parse_object(std::string_view line);
// Peeks at the "op" field without validating the rest.
std::optional<std::string> peek_op(std::string_view line);

}  // namespace mcd

#endif  // MCD_WIRE_MESSAGES_H_
