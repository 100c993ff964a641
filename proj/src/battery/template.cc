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

#include "inkassess/battery/template.h"

#include <array>
#include <set>

#include "inkassess/ink/ink_json.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

constexpr std::array<std::string_view, 5> kKindNames = {
    "target", "distractor", "input_field", "node", "canvas"};

absl::Status Invalid(const std::string& message) {
  return MakeError(ErrorKind::kInvalidTemplate, message);
}

}  // namespace

std::string_view RegionKindName(RegionKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}

std::optional<RegionKind> ParseRegionKind(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<RegionKind>(i);
  }
  return std::nullopt;
}

std::vector<const Region*> TestTemplate::RegionsOfKind(RegionKind kind) const {
  std::vector<const Region*> out;
  for (const Region& r : regions) {
    if (r.kind == kind) out.push_back(&r);
  }
  return out;
}

const Region* TestTemplate::FindRegion(std::string_view id) const {
  for (const Region& r : regions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

absl::Status ValidateTemplate(const TestTemplate& tmpl) {
  if (tmpl.test_id.empty()) return Invalid("missing test_id");
  if (!(tmpl.page.w_mm > 0 && tmpl.page.h_mm > 0)) {
    return Invalid("page size must be positive");
  }
  std::set<std::string> ids;
  std::set<int> ordinals;
  for (const Region& r : tmpl.regions) {
    if (r.id.empty()) return Invalid("region without id");
    if (!ids.insert(r.id).second) return Invalid("duplicate region id " + r.id);
    const BBox& b = r.bbox;
    if (!(b.min_x < b.max_x && b.min_y < b.max_y)) {
      return Invalid("region " + r.id + " has empty bbox");
    }
    if (b.min_x < 0 || b.min_y < 0 || b.max_x > tmpl.page.w_mm ||
        b.max_y > tmpl.page.h_mm) {
      return Invalid("region " + r.id + " extends beyond the page");
    }
    if (r.kind == RegionKind::kNode) {
      if (!r.seq.has_value()) return Invalid("node " + r.id + " has no seq");
      if (!ordinals.insert(*r.seq).second) {
        return Invalid("duplicate node seq " + std::to_string(*r.seq));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<TestTemplate> TemplateFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return Invalid("template must be an object");
  if (j.contains("format") && j["format"] != kTemplateFormatName) {
    return MakeError(ErrorKind::kInvalidFormat, "unknown template format");
  }
  if (j.contains("version") && j["version"] != kTemplateFormatVersion) {
    return MakeError(ErrorKind::kInvalidFormat, "unsupported template version");
  }
  TestTemplate tmpl;
  try {
    tmpl.test_id = j.at("test_id").get<std::string>();
    tmpl.page.w_mm = j.at("page").at("w_mm").get<double>();
    tmpl.page.h_mm = j.at("page").at("h_mm").get<double>();
    for (const auto& jr : j.at("regions")) {
      Region r;
      r.id = jr.at("id").get<std::string>();
      std::string kind = jr.at("kind").get<std::string>();
      auto parsed = ParseRegionKind(kind);
      if (!parsed.has_value()) return Invalid("unknown region kind " + kind);
      r.kind = *parsed;
      const auto& b = jr.at("bbox");
      if (!b.is_array() || b.size() != 4) {
        return Invalid("bbox must be [x0,y0,x1,y1]");
      }
      r.bbox = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                b[3].get<double>()};
      if (jr.contains("seq")) r.seq = jr["seq"].get<int>();
      if (jr.contains("expect")) r.expect = jr["expect"].get<std::string>();
      tmpl.regions.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    return Invalid(e.what());
  }
  INKASSESS_RETURN_IF_ERROR(ValidateTemplate(tmpl));
  return tmpl;
}

nlohmann::ordered_json TemplateToJson(const TestTemplate& tmpl) {
  nlohmann::ordered_json regions = nlohmann::ordered_json::array();
  for (const Region& r : tmpl.regions) {
    nlohmann::ordered_json jr = {
        {"id", r.id},
        {"kind", std::string(RegionKindName(r.kind))},
        {"bbox", {r.bbox.min_x, r.bbox.min_y, r.bbox.max_x, r.bbox.max_y}}};
    if (r.seq.has_value()) jr["seq"] = *r.seq;
    if (r.expect.has_value()) jr["expect"] = *r.expect;
    regions.push_back(std::move(jr));
  }
  return {{"format", kTemplateFormatName},
          {"version", kTemplateFormatVersion},
          {"test_id", tmpl.test_id},
          {"page", {{"w_mm", tmpl.page.w_mm}, {"h_mm", tmpl.page.h_mm}}},
          {"regions", std::move(regions)}};
}

absl::StatusOr<TestTemplate> ParseTemplateJson(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return MakeError(ErrorKind::kInvalidFormat, "template is not valid JSON");
  }
  return TemplateFromJson(j);
}

std::string WriteTemplateJson(const TestTemplate& tmpl) {
  return TemplateToJson(tmpl).dump(2) + "\n";
}

absl::StatusOr<TestTemplate> ReadTemplateFile(const std::string& path) {
  INKASSESS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParseTemplateJson(text);
}

}  // namespace inkassess
