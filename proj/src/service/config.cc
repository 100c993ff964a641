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

#include "inkassess/service/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

using Field = std::variant<std::string ServiceConfig::*, int ServiceConfig::*,
                           double ServiceConfig::*>;

struct Key {
  const char* name;
  Field field;
};

const std::vector<Key>& Keys() {
  static const auto* keys = new std::vector<Key>{
      {"store_root", &ServiceConfig::store_root},
      {"host", &ServiceConfig::host},
      {"port", &ServiceConfig::port},
      {"http_port", &ServiceConfig::http_port},
      {"token", &ServiceConfig::token},
      {"pause_threshold_s", &ServiceConfig::pause_threshold_s},
      {"group_gap_mm", &ServiceConfig::group_gap_mm},
      {"group_gap_s", &ServiceConfig::group_gap_s},
      {"angle_tolerance_deg", &ServiceConfig::angle_tolerance_deg},
      {"crossing_ink_mm", &ServiceConfig::crossing_ink_mm},
      {"long_pause_s", &ServiceConfig::long_pause_s},
      {"correction_min_age_s", &ServiceConfig::correction_min_age_s},
      {"correction_overlap", &ServiceConfig::correction_overlap},
      {"correction_tolerance_mm", &ServiceConfig::correction_tolerance_mm},
      {"high_tremor_percentile", &ServiceConfig::high_tremor_percentile},
      {"high_tremor_floor_mm", &ServiceConfig::high_tremor_floor_mm},
      {"feature_format", &ServiceConfig::feature_format},
  };
  return *keys;
}

absl::Status Invalid(std::string_view message) {
  return MakeError(ErrorKind::kInvalidConfig, message);
}

absl::Status SetFromJson(ServiceConfig& config, const Key& key,
                         const nlohmann::json& value) {
  if (auto* p = std::get_if<std::string ServiceConfig::*>(&key.field)) {
    if (!value.is_string()) {
      return Invalid(absl::StrCat(key.name, " must be a string"));
    }
    config.*(*p) = value.get<std::string>();
  } else if (auto* p = std::get_if<int ServiceConfig::*>(&key.field)) {
    if (!value.is_number_integer()) {
      return Invalid(absl::StrCat(key.name, " must be an integer"));
    }
    config.*(*p) = value.get<int>();
  } else {
    if (!value.is_number()) {
      return Invalid(absl::StrCat(key.name, " must be a number"));
    }
    config.*std::get<double ServiceConfig::*>(key.field) = value.get<double>();
  }
  return absl::OkStatus();
}

absl::Status SetFromText(ServiceConfig& config, const Key& key,
                         const std::string& text) {
  if (auto* p = std::get_if<std::string ServiceConfig::*>(&key.field)) {
    config.*(*p) = text;
    return absl::OkStatus();
  }
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (auto* p = std::get_if<int ServiceConfig::*>(&key.field)) {
    int v = 0;
    auto r = std::from_chars(begin, end, v);
    if (r.ec != std::errc() || r.ptr != end) {
      return Invalid(absl::StrCat("environment value for ", key.name,
                                  " is not an integer: '", text, "'"));
    }
    config.*(*p) = v;
    return absl::OkStatus();
  }
  double v = 0;
  auto r = std::from_chars(begin, end, v);
  if (r.ec != std::errc() || r.ptr != end) {
    return Invalid(absl::StrCat("environment value for ", key.name,
                                " is not a number: '", text, "'"));
  }
  config.*std::get<double ServiceConfig::*>(key.field) = v;
  return absl::OkStatus();
}

}  // namespace

std::optional<std::string> ProcessEnv(std::string_view name) {
  const char* v = std::getenv(std::string(name).c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

absl::StatusOr<ServiceConfig> ConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return Invalid("config must be a JSON object");
  ServiceConfig config;
  for (const auto& [name, value] : j.items()) {
    const Key* key = nullptr;
    for (const Key& k : Keys()) {
      if (name == k.name) key = &k;
    }
    if (key == nullptr) return Invalid(absl::StrCat("unknown key '", name, "'"));
    INKASSESS_RETURN_IF_ERROR(SetFromJson(config, *key, value));
  }
  return config;
}

absl::Status ApplyEnvOverrides(ServiceConfig& config, const EnvLookup& env) {
  for (const Key& key : Keys()) {
    std::string var = "INKASSESS_";
    for (const char* c = key.name; *c != '\0'; ++c) {
      var += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    }
    std::optional<std::string> value = env(var);
    if (value.has_value()) {
      INKASSESS_RETURN_IF_ERROR(SetFromText(config, key, *value));
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateConfig(const ServiceConfig& c) {
  if (c.store_root.empty()) return Invalid("store_root is empty");
  if (c.host.empty()) return Invalid("host is empty");
  for (int port : {c.port, c.http_port}) {
    if (port < 0 || port > 65535) {
      return Invalid(absl::StrCat("port out of range: ", port));
    }
  }
  const std::pair<const char*, double> positive[] = {
      {"pause_threshold_s", c.pause_threshold_s},
      {"group_gap_s", c.group_gap_s},
      {"angle_tolerance_deg", c.angle_tolerance_deg},
      {"crossing_ink_mm", c.crossing_ink_mm},
      {"long_pause_s", c.long_pause_s},
      {"correction_min_age_s", c.correction_min_age_s},
      {"correction_tolerance_mm", c.correction_tolerance_mm},
  };
  for (const auto& [name, v] : positive) {
    if (!(v > 0) || !std::isfinite(v)) {
      return Invalid(absl::StrCat(name, " must be positive"));
    }
  }
  if (!(c.group_gap_mm >= 0) || !std::isfinite(c.group_gap_mm)) {
    return Invalid("group_gap_mm must be non-negative");
  }
  if (!(c.correction_overlap > 0 && c.correction_overlap <= 1)) {
    return Invalid("correction_overlap must be in (0, 1]");
  }
  if (!(c.high_tremor_percentile >= 0 && c.high_tremor_percentile <= 100)) {
    return Invalid("high_tremor_percentile must be in [0, 100]");
  }
  if (!(c.high_tremor_floor_mm >= 0) || !std::isfinite(c.high_tremor_floor_mm)) {
    return Invalid("high_tremor_floor_mm must be non-negative");
  }
  if (c.feature_format != "csv" && c.feature_format != "json") {
    return Invalid("feature_format must be csv or json");
  }
  return absl::OkStatus();
}

absl::StatusOr<ServiceConfig> LoadConfig(const std::string& path,
                                         const EnvLookup& env) {
  ServiceConfig config;
  if (!path.empty()) {
    INKASSESS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
      return Invalid(absl::StrCat(path, " is not valid JSON"));
    }
    INKASSESS_ASSIGN_OR_RETURN(config, ConfigFromJson(j));
  }
  INKASSESS_RETURN_IF_ERROR(ApplyEnvOverrides(config, env));
  INKASSESS_RETURN_IF_ERROR(ValidateConfig(config));
  return config;
}

nlohmann::ordered_json ConfigToJson(const ServiceConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const Key& key : Keys()) {
    std::visit([&](auto member) { j[key.name] = config.*member; }, key.field);
  }
  return j;
}

}  // namespace inkassess
