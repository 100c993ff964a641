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

#ifndef INKASSESS_FEATURES_EXPORT_H_
#define INKASSESS_FEATURES_EXPORT_H_

#include <span>
#include <string>

#include "inkassess/features/feature_vector.h"
#include "json.hpp"

namespace inkassess {

// CSV with a header of `session_id,level,index` followed by the catalog ids
// of `level`, and one row per vector. Vectors of another level are skipped.
std::string FeaturesToCsv(std::span<const FeatureVector> vectors,
                          FeatureLevel level);

// {"scope":{"session_id","level","index"},"values":{id: value,...}} with ids
// in catalog order.
nlohmann::ordered_json FeatureVectorToJson(const FeatureVector& vector);
nlohmann::ordered_json FeaturesToJson(std::span<const FeatureVector> vectors);

}  // namespace inkassess

#endif  // INKASSESS_FEATURES_EXPORT_H_
