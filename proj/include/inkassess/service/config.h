// Copyright 2026 The InkAssess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INKASSESS_SERVICE_CONFIG_H_
#define INKASSESS_SERVICE_CONFIG_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace inkassess {

// Flat configuration shared by the service and the CLI. Each field is a key of
// the JSON config file with the same name. The environment variable
// INKASSESS_<KEY IN UPPER CASE> overrides the file (e.g. INKASSESS_PORT=9000).
struct ServiceConfig {
  std::string store_root = "inkassess-store";
  std::string host = "127.0.0.1";
  int port = 7878;       // NDJSON stream; 0 picks a free port
  int http_port = 7879;  // read-only HTTP; 0 picks a free port
  // Static shared secret. Empty disables the check.
  std::string token;

  double pause_threshold_s = 0.2;
  double group_gap_mm = 5.0;
  double group_gap_s = 1.0;
  double angle_tolerance_deg = 15.0;
  double crossing_ink_mm = 2.0;
  double long_pause_s = 3.0;

  double correction_min_age_s = 2.0;
  double correction_overlap = 0.3;
  double correction_tolerance_mm = 1.0;
  double high_tremor_percentile = 95.0;
  double high_tremor_floor_mm = 0.1;

  std::string feature_format = "csv";  // csv | json
};

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

// Reads the process environment.
std::optional<std::string> ProcessEnv(std::string_view name);

// InvalidConfig for unknown keys, wrong JSON types, unparsable environment
// values, or out-of-range settings.
absl::StatusOr<ServiceConfig> ConfigFromJson(const nlohmann::json& j);
absl::Status ApplyEnvOverrides(ServiceConfig& config, const EnvLookup& env);
absl::Status ValidateConfig(const ServiceConfig& config);

// Defaults, then `path` (when non-empty), then the environment.
absl::StatusOr<ServiceConfig> LoadConfig(const std::string& path,
                                         const EnvLookup& env = ProcessEnv);

nlohmann::ordered_json ConfigToJson(const ServiceConfig& config);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_CONFIG_H_
