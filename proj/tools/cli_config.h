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


// Settings shared by all mcd subcommands. Each one can come from a flag, an
// MCD_ environment variable or the mcd.json config file, in that order.

#ifndef MCD_TOOLS_CLI_CONFIG_H_
#define MCD_TOOLS_CLI_CONFIG_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mcd::cli {

struct Setting {
  std::string_view key;
  std::string_view flag;
  std::string_view env;
  std::string_view fallback;
  std::string_view help;
};

inline constexpr Setting kSettings[] = {
    {"data_dir", "--data-dir", "MCD_DATA_DIR", "mcd-data", "Directory for params, authority state and certificates"},
    {"suite", "--suite", "MCD_SUITE", "production_pairing", "Group suite used by setup"},
    {"server", "--server", "MCD_SERVER", "unix:mcd-match.sock", "Matching server endpoint"},
    {"key_server", "--key-server", "MCD_KEY_SERVER", "unix:mcd-keys.sock", "Key server endpoint"},
    {"dir_server", "--dir-server", "MCD_DIR_SERVER", "unix:mcd-dir.sock", "Key directory endpoint"},
    {"kdf_profile", "--kdf-profile", "MCD_KDF_PROFILE", "test", "KDF profile for the simple variant (test|demo)"},
    {"seed", "--seed", "MCD_SEED", "", "Seed: 64 hex chars for setup, an integer for simulate"},
};

inline constexpr std::string_view kConfigEnv = "MCD_CONFIG";
inline constexpr std::string_view kConfigFile = "mcd.json";

enum class Source { kFlag, kEnv, kFile, kDefault };
std::string_view source_name(Source s);

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;
EnvLookup process_env();

class CliConfig {
 public:
  // flags maps setting keys to values given on the command line.
  static CliConfig resolve(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                           const std::optional<nlohmann::json>& file);

  const std::string& get(std::string_view key) const;
  Source source(std::string_view key) const;
  bool is_set(std::string_view key) const { return !get(key).empty(); }
  std::filesystem::path data_dir() const { return get("data_dir"); }
  nlohmann::ordered_json to_json() const;

 private:
  std::map<std::string, std::pair<std::string, Source>, std::less<>> values_;
};

// Loads the explicit path if given, else MCD_CONFIG, else ./mcd.json when it
// exists. Throws Error(kInvalidArgument) on unreadable or invalid files.
std::optional<nlohmann::json> load_config_file(const std::optional<std::filesystem::path>& path,
                                               const EnvLookup& env);

}  // namespace mcd::cli

#endif  // MCD_TOOLS_CLI_CONFIG_H_
