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

#include "cli_config.h"

#include <cstdlib>
#include <fstream>

#include "mcd/error.h"

namespace mcd::cli {

std::string_view source_name(Source s) {
  switch (s) {
    case Source::kFlag: return "flag";
    case Source::kEnv: return "env";
    case Source::kFile: return "file";
    case Source::kDefault: return "default";
  }
  return "default";
}

EnvLookup process_env() {
  return [](std::string_view name) -> std::optional<std::string> {
    const char* v = std::getenv(std::string(name).c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

CliConfig CliConfig::resolve(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                             const std::optional<nlohmann::json>& file) {
  CliConfig c;
  for (const Setting& s : kSettings) {
    const std::string key(s.key);
    if (auto it = flags.find(key); it != flags.end()) {
      c.values_[key] = {it->second, Source::kFlag};
    } else if (auto v = env ? env(s.env) : std::nullopt) {
      c.values_[key] = {*v, Source::kEnv};
    } else if (file && file->contains(key)) {
      const auto& j = (*file)[key];
      std::string v2;
      if (j.is_string()) {
        v2 = j.get<std::string>();
      } else if (j.is_number_integer()) {
        v2 = std::to_string(j.get<long long>());
      } else {
        throw Error(Errc::kInvalidArgument, "config value for " + key + " must be a string");
      }
      c.values_[key] = {v2, Source::kFile};
    } else {
      c.values_[key] = {std::string(s.fallback), Source::kDefault};
    }
  }
  return c;
}

const std::string& CliConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(Errc::kInvalidArgument, "unknown setting " + std::string(key));
  return it->second.first;
}

Source CliConfig::source(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(Errc::kInvalidArgument, "unknown setting " + std::string(key));
  return it->second.second;
}

nlohmann::ordered_json CliConfig::to_json() const {
  nlohmann::ordered_json j;
  for (const Setting& s : kSettings) {
    const auto& [value, source] = values_.at(std::string(s.key));
    j[std::string(s.key)] = {{"value", value}, {"source", source_name(source)}};
  }
  return j;
}

std::optional<nlohmann::json> load_config_file(const std::optional<std::filesystem::path>& path,
                                               const EnvLookup& env) {
  std::filesystem::path p;
  if (path) {
    p = *path;
  } else if (auto v = env ? env(kConfigEnv) : std::nullopt) {
    p = *v;
  } else if (std::filesystem::exists(kConfigFile)) {
    p = kConfigFile;
  } else {
    return std::nullopt;
  }
  std::ifstream in(p);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot read config file " + p.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(Errc::kInvalidArgument, "config file " + p.string() + " is not a JSON object");
  }
  return j;
}

}  // namespace mcd::cli
