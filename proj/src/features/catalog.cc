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

#include "inkassess/features/catalog.h"

#include <array>
#include <map>

#include "absl/strings/str_cat.h"

namespace inkassess {
namespace {

struct Entry {
  const char* id;
  const char* unit;
  const char* description;
};

constexpr std::array<Entry, 25> kStrokeEntries = {{
    {"duration_s", "s", "Time from pen-down to pen-up"},
    {"sample_count", "count", "Number of pen samples"},
    {"sampling_rate_hz", "Hz", "Mean sample rate over the stroke"},
    {"path_length_mm", "mm", "Polyline length of the stroke"},
    {"displacement_mm", "mm", "Distance from first to last sample"},
    {"straightness", "1", "Displacement divided by path length"},
    {"bbox_width_mm", "mm", "Horizontal extent"},
    {"bbox_height_mm", "mm", "Vertical extent"},
    {"pressure_mean", "1", "Mean normalized pressure"},
    {"pressure_max", "1", "Maximum normalized pressure"},
    {"pressure_min", "1", "Minimum normalized pressure"},
    {"pressure_std", "1", "Population standard deviation of pressure"},
    {"speed_mean_mm_s", "mm/s", "Mean pen speed"},
    {"speed_max_mm_s", "mm/s", "Peak pen speed"},
    {"speed_std_mm_s", "mm/s", "Standard deviation of pen speed"},
    {"time_to_peak_speed_s", "s", "Time from pen-down to peak speed"},
    {"accel_abs_mean_mm_s2", "mm/s^2", "Mean acceleration magnitude"},
    {"accel_abs_max_mm_s2", "mm/s^2", "Peak acceleration magnitude"},
    {"jerk_abs_mean_mm_s3", "mm/s^3", "Mean jerk magnitude"},
    {"direction_change_count", "count",
     "Sign changes between successive turns sharper than 20 degrees"},
    {"total_turning_rad", "rad", "Sum of absolute turning angles"},
    {"curvature_mean_1_mm", "1/mm", "Mean discrete curvature"},
    {"curvature_max_1_mm", "1/mm", "Peak discrete curvature"},
    {"tremor_index_mm", "mm",
     "RMS perpendicular deviation from the smoothed path"},
    {"tremor_dominant_freq_hz", "Hz",
     "Zero-crossing frequency of the tremor residual"},
}};

constexpr std::array<Entry, 5> kGapEntries = {{
    {"gap_duration_s", "s", "Pen-up duration"},
    {"is_pause", "flag", "1 when the gap exceeds the pause threshold"},
    {"hover_sample_count", "count", "In-air samples reported by the pen"},
    {"gap_jump_mm", "mm", "Distance between the strokes around the gap"},
    {"in_air_speed_mm_s", "mm/s", "Jump distance divided by gap duration"},
}};

constexpr std::array<Entry, 11> kDocumentEntries = {{
    {"session_span_s", "s", "First to last sample"},
    {"total_on_paper_s", "s", "Sum of stroke durations"},
    {"total_in_air_s", "s", "Sum of gap durations"},
    {"in_air_ratio", "1", "In-air time over session span"},
    {"stroke_count", "count", "Number of strokes"},
    {"gap_count", "count", "Number of in-air gaps"},
    {"pause_count", "count", "Gaps longer than the pause threshold"},
    {"total_path_mm", "mm", "Sum of stroke path lengths"},
    {"mean_gap_s", "s", "Mean gap duration"},
    {"max_gap_s", "s", "Longest gap"},
    {"stroke_rate_per_min", "1/min", "Strokes per minute of session span"},
}};

struct Catalog {
  std::vector<FeatureDescriptor> all;
  std::array<std::vector<std::string>, 3> ids;
  std::array<std::map<std::string, int, std::less<>>, 3> index;
  std::map<std::string, size_t, std::less<>> by_id;

  void Add(std::string id, FeatureLevel level, std::string unit,
           std::string description) {
    auto slot = static_cast<size_t>(level);
    index[slot].emplace(id, static_cast<int>(ids[slot].size()));
    ids[slot].push_back(id);
    by_id.emplace(id, all.size());
    all.push_back({std::move(id), level, std::move(unit),
                   std::move(description)});
  }
};

const Catalog& GetCatalog() {
  static const Catalog* catalog = [] {
    auto* c = new Catalog;
    for (const Entry& e : kStrokeEntries) {
      c->Add(e.id, FeatureLevel::kStroke, e.unit, e.description);
    }
    for (const Entry& e : kGapEntries) {
      c->Add(e.id, FeatureLevel::kGap, e.unit, e.description);
    }
    for (const Entry& e : kDocumentEntries) {
      c->Add(e.id, FeatureLevel::kDocument, e.unit, e.description);
    }
    for (const Entry& e : kStrokeEntries) {
      c->Add(absl::StrCat("mean_", e.id), FeatureLevel::kDocument, e.unit,
             absl::StrCat("Mean over strokes: ", e.description));
      c->Add(absl::StrCat("std_", e.id), FeatureLevel::kDocument, e.unit,
             absl::StrCat("Std over strokes: ", e.description));
    }
    return c;
  }();
  return *catalog;
}

}  // namespace

std::string_view FeatureLevelName(FeatureLevel level) {
  switch (level) {
    case FeatureLevel::kStroke:
      return "stroke";
    case FeatureLevel::kGap:
      return "gap";
    case FeatureLevel::kDocument:
      return "document";
  }
  return "stroke";
}

std::optional<FeatureLevel> ParseFeatureLevel(std::string_view name) {
  if (name == "stroke") return FeatureLevel::kStroke;
  if (name == "gap") return FeatureLevel::kGap;
  if (name == "document") return FeatureLevel::kDocument;
  return std::nullopt;
}

const std::vector<FeatureDescriptor>& FeatureCatalog() {
  return GetCatalog().all;
}

const std::vector<std::string>& FeatureIds(FeatureLevel level) {
  return GetCatalog().ids[static_cast<size_t>(level)];
}

int FeatureIndex(FeatureLevel level, std::string_view id) {
  const auto& index = GetCatalog().index[static_cast<size_t>(level)];
  auto it = index.find(id);
  return it == index.end() ? -1 : it->second;
}

const FeatureDescriptor* FindFeature(std::string_view id) {
  const Catalog& c = GetCatalog();
  auto it = c.by_id.find(id);
  return it == c.by_id.end() ? nullptr : &c.all[it->second];
}

}  // namespace inkassess
