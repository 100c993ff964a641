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

#ifndef INKASSESS_FEATURES_CATALOG_H_
#define INKASSESS_FEATURES_CATALOG_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace inkassess {

enum class FeatureLevel { kStroke, kGap, kDocument };

std::string_view FeatureLevelName(FeatureLevel level);
std::optional<FeatureLevel> ParseFeatureLevel(std::string_view name);

struct FeatureDescriptor {
  std::string id;
  FeatureLevel level;
  std::string unit;
  std::string description;
};

// The full catalog in its canonical order: stroke features, then gap
// features, then document features (including mean_/std_ aggregates of every
// stroke feature).
const std::vector<FeatureDescriptor>& FeatureCatalog();

// Ids of one level, in catalog order.
const std::vector<std::string>& FeatureIds(FeatureLevel level);

// Position of `id` within its level, or -1.
int FeatureIndex(FeatureLevel level, std::string_view id);

const FeatureDescriptor* FindFeature(std::string_view id);

}  // namespace inkassess

#endif  // INKASSESS_FEATURES_CATALOG_H_
