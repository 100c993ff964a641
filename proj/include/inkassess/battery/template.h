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

#ifndef INKASSESS_BATTERY_TEMPLATE_H_
#define INKASSESS_BATTERY_TEMPLATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"
#include "json.hpp"

namespace inkassess {

inline constexpr char kTemplateFormatName[] = "template-json";
inline constexpr int kTemplateFormatVersion = 1;

enum class RegionKind { kTarget, kDistractor, kInputField, kNode, kCanvas };

std::string_view RegionKindName(RegionKind kind);
std::optional<RegionKind> ParseRegionKind(std::string_view name);

// A region of interest on the printed page. `seq` orders trail nodes.
// `expect` tags what the region should contain:
//   "HH:MM"                   clock canvas with the time to set
//   "contour"                 pre-printed clock face (circle inscribed in bbox)
//   "interlocking-pentagons"  pentagon copy canvas
//   "circle,rectangle,..."    shape checklist (recognizer label names)
struct Region {
  std::string id;
  RegionKind kind = RegionKind::kCanvas;
  BBox bbox;
  std::optional<int> seq;
  std::optional<std::string> expect;

  friend bool operator==(const Region&, const Region&) = default;
};

struct TestTemplate {
  std::string test_id;
  PageSize page;
  std::vector<Region> regions;

  std::vector<const Region*> RegionsOfKind(RegionKind kind) const;
  const Region* FindRegion(std::string_view id) const;

  friend bool operator==(const TestTemplate&, const TestTemplate&) = default;
};

// Checks that regions have positive extent inside the page, ids are unique,
// every node has a `seq` and node ordinals are unique. Fails with
// InvalidTemplate.
absl::Status ValidateTemplate(const TestTemplate& tmpl);

absl::StatusOr<TestTemplate> TemplateFromJson(const nlohmann::json& j);
nlohmann::ordered_json TemplateToJson(const TestTemplate& tmpl);
absl::StatusOr<TestTemplate> ParseTemplateJson(std::string_view text);
std::string WriteTemplateJson(const TestTemplate& tmpl);
absl::StatusOr<TestTemplate> ReadTemplateFile(const std::string& path);

}  // namespace inkassess

#endif  // INKASSESS_BATTERY_TEMPLATE_H_
