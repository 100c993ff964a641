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

#include "inkassess/features/export.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "inkassess/format.h"

namespace inkassess {
namespace {

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string FeaturesToCsv(std::span<const FeatureVector> vectors,
                          FeatureLevel level) {
  std::string out = absl::StrCat("session_id,level,index,",
                                 absl::StrJoin(FeatureIds(level), ","), "\n");
  for (const FeatureVector& v : vectors) {
    if (v.level() != level) continue;
    absl::StrAppend(&out, CsvField(v.scope().session_id), ",",
                    std::string(FeatureLevelName(level)), ",",
                    v.scope().index);
    for (double value : v.values()) {
      absl::StrAppend(&out, ",", FormatDouble(value));
    }
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json FeatureVectorToJson(const FeatureVector& vector) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  const auto& ids = vector.ids();
  for (size_t i = 0; i < ids.size(); ++i) values[ids[i]] = vector.at(i);
  return {{"scope",
           {{"session_id", vector.scope().session_id},
            {"level", std::string(FeatureLevelName(vector.level()))},
            {"index", vector.scope().index}}},
          {"values", std::move(values)}};
}

nlohmann::ordered_json FeaturesToJson(std::span<const FeatureVector> vectors) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const FeatureVector& v : vectors) out.push_back(FeatureVectorToJson(v));
  return out;
}

}  // namespace inkassess
