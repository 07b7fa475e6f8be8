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


// Setup and certificate issuance for the pairing protocol.

#ifndef MCD_AUTHORITY_AUTHORITY_H_
#define MCD_AUTHORITY_AUTHORITY_H_

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mcd/authority/enrollment.h"
#include "mcd/crypto/group_suite.h"
#include "mcd/crypto/identity.h"

namespace mcd {

enum class SecurityProfile { kTest, kProduction };

std::string_view profile_name(SecurityProfile p);
std::optional<SecurityProfile> parse_profile(std::string_view name);

inline constexpr std::string_view kProtocolVersion = "MCD-v1";

struct SystemParams {
  SuitePtr suite;
  SourcePoint p1;
  SourcePoint p2;
  SourcePoint p_pub1;
  SourcePoint p_pub2;
  unsigned n = 256;
  std::string version{kProtocolVersion};

  // pair(p_pub1, p2) == pair(p1, p_pub2).
  bool consistent() const;

  // {suite_id, q, generators, p_pub1, p_pub2, n, version}; all group values
  // are lowercase hex.
  nlohmann::ordered_json to_json() const;
  // `suite` overrides the lookup by suite_id (needed for the transparent
  // suite, which is not selectable from files). Throws Error(kMalformed).
  static SystemParams from_json(const nlohmann::json& j, SuitePtr suite = nullptr);
};

struct Certificate {
  Identity identity;
  SourcePoint c1;
  SourcePoint c2;

  nlohmann::ordered_json to_json() const;
  static Certificate from_json(const nlohmann::json& j, const GroupSuite& suite);
};

class MasterSecret {
 public:
  bool live() const { return live_; }
  // Idempotent; zeroizes the scalar.
  void erase();

  // Fixture constructor for the transparent suite.
  static MasterSecret from_scalar(const Scalar& s) { return MasterSecret(s); }

 private:
  friend class Authority;
  friend struct MasterSecretInspector;
  explicit MasterSecret(const Scalar& s) : s_(s), live_(true) {}
  MasterSecret() = default;

  Scalar s_;
  bool live_ = false;
};

class Authority {
 public:
  // Refuses a seed in the production profile (Error(kPolicy)). A seed must be
  // 32 bytes.
  static Authority setup(SecurityProfile profile, std::optional<Bytes> seed,
                         SuitePtr suite = production_suite());
  // Builds an authority around a known master secret (test fixtures and
  // reloaded state).
  static Authority from_secret(SuitePtr suite, MasterSecret master, EnrollmentRegistry enrollment);

  const SystemParams& params() const { return params_; }
  const MasterSecret& master() const { return master_; }
  const EnrollmentRegistry& enrollment() const { return enrollment_; }

  // Throws kIssuanceClosed after erase, kUnauthorized on a bad proof.
  Certificate issue_certificate(const Identity& id, ByteSpan auth_proof);
  void erase_master() { master_.erase(); }

  // Authority state file: {suite_id, s, live, enrollment_key}. The scalar is
  // written only while live.
  nlohmann::ordered_json state_json() const;
  static Authority from_state_json(const nlohmann::json& j);

 private:
  Authority(SystemParams params, MasterSecret master, EnrollmentRegistry enrollment)
      : params_(std::move(params)), master_(master), enrollment_(std::move(enrollment)) {}

  SystemParams params_;
  MasterSecret master_;
  EnrollmentRegistry enrollment_;
};

bool verify_certificate(const SystemParams& params, const Certificate& cert);

}  // namespace mcd

#endif  // MCD_AUTHORITY_AUTHORITY_H_
