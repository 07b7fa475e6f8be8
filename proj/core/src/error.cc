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
#include "mcd/error.h"

namespace mcd {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kMalformed: return "malformed";
    case Errc::kPhase: return "phase";
    case Errc::kMode: return "mode";
    case Errc::kRate: return "rate";
    case Errc::kUnauthorized: return "unauthorized";
    case Errc::kDenied: return "denied";
    case Errc::kIssuanceClosed: return "issuance_closed";
    case Errc::kSuiteMismatch: return "suite_mismatch";
    case Errc::kInvalidArgument: return "invalid_argument";
    case Errc::kPolicy: return "policy";
    case Errc::kTransport: return "transport";
    case Errc::kCorruptLog: return "corrupt_log";
    case Errc::kBrokenSuite: return "broken_suite";
  }
  return "unknown";
}

std::optional<Errc> errc_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Errc::kBrokenSuite); ++i) {
    auto code = static_cast<Errc>(i);
    if (errc_name(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace mcd
