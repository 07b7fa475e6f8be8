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
#ifndef MCD_ERROR_H_
#define MCD_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcd {

enum class Errc {
  kMalformed,
  kPhase,
  kMode,
  kRate,
  kUnauthorized,
  kDenied,
  kIssuanceClosed,
  kSuiteMismatch,
  kInvalidArgument,
  kPolicy,
  kTransport,
  kCorruptLog,
  kBrokenSuite,
};

// Short lowercase name; for the codes that travel on the wire this is the
// exact "err" string.
std::string_view errc_name(Errc code);
std::optional<Errc> errc_from_name(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace mcd

#endif  // MCD_ERROR_H_
