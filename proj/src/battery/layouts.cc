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

#include "inkassess/battery/layouts.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "inkassess/battery/registry.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

constexpr double kClockCenterX = 105;
constexpr double kClockCenterY = 150;
constexpr double kClockRadius = 40;

Region Canvas(std::string id, BBox box, std::string expect) {
  return {std::move(id), RegionKind::kCanvas, box, std::nullopt,
          std::move(expect)};
}

TestTemplate AgeConcentrationTemplate() {
  TestTemplate t{"AKT", {}, {}};
  constexpr int kColumns = 6;
  constexpr int kRows = 10;
  constexpr double kCell = 14;
  constexpr double kBox = 10;
  for (int i = 0; i < kColumns * kRows; ++i) {
    double x = 40 + (i % kColumns) * kCell;
    double y = 50 + (i / kColumns) * kCell;
    // Every third item is a target: 20 targets among 60 items.
    RegionKind kind = i % 3 == 0 ? RegionKind::kTarget : RegionKind::kDistractor;
    t.regions.push_back({absl::StrFormat("item-%02d", i + 1), kind,
                         BBox{x, y, x + kBox, y + kBox}, std::nullopt,
                         std::nullopt});
  }
  return t;
}

TestTemplate CeradTemplate() {
  return {"CERAD",
          {},
          {Canvas("circle", {10, 10, 100, 100}, "circle"),
           Canvas("diamond", {110, 10, 200, 100}, "diamond"),
           Canvas("rectangles", {10, 110, 100, 200}, "rectangle"),
           Canvas("cube", {110, 110, 200, 200}, "complex_figure"),
           Canvas("pentagons", {10, 205, 200, 290},
                  "interlocking-pentagons")}};
}

TestTemplate DemTectTemplate() {
  TestTemplate t{"DemTect", {}, {}};
  for (int i = 0; i < 6; ++i) {
    double y = 40 + 25 * i;
    t.regions.push_back({absl::StrCat("field-", i + 1), RegionKind::kInputField,
                         BBox{30, y, 180, y + 15}, std::nullopt,
                         std::nullopt});
  }
  return t;
}

}  // namespace

TestTemplate ClockTemplate(std::string test_id, std::string target_time,
                           bool preprinted_contour) {
  TestTemplate t{std::move(test_id), {}, {}};
  t.regions.push_back(Canvas("clock",
                             {kClockCenterX - 60, kClockCenterY - 60,
                              kClockCenterX + 60, kClockCenterY + 60},
                             std::move(target_time)));
  if (preprinted_contour) {
    t.regions.push_back(
        Canvas("contour",
               {kClockCenterX - kClockRadius, kClockCenterY - kClockRadius,
                kClockCenterX + kClockRadius, kClockCenterY + kClockRadius},
               "contour"));
  }
  return t;
}

TestTemplate TrailTemplate(int nodes) {
  TestTemplate t{"TMT", {}, {}};
  constexpr int kPerRow = 5;
  constexpr double kSpacing = 40;
  constexpr double kRadius = 6;
  for (int i = 0; i < nodes; ++i) {
    int row = i / kPerRow;
    int col = row % 2 == 0 ? i % kPerRow : kPerRow - 1 - i % kPerRow;
    double cx = 25 + col * kSpacing;
    double cy = 30 + row * kSpacing;
    t.regions.push_back({absl::StrCat("node-", i + 1), RegionKind::kNode,
                         BBox{cx - kRadius, cy - kRadius, cx + kRadius,
                              cy + kRadius},
                         i + 1, std::nullopt});
  }
  return t;
}

absl::StatusOr<TestTemplate> DefaultTemplate(std::string_view test_id) {
  INKASSESS_RETURN_IF_ERROR(RegistryLookup(test_id).status());
  if (test_id == "AKT") return AgeConcentrationTemplate();
  if (test_id == "CDT") return ClockTemplate("CDT", "11:10");
  if (test_id == "CERAD") return CeradTemplate();
  if (test_id == "DemTect") return DemTectTemplate();
  if (test_id == "MMSE") {
    return TestTemplate{"MMSE",
                        {},
                        {Canvas("pentagons", {30, 80, 180, 200},
                                "interlocking-pentagons")}};
  }
  if (test_id == "MoCA") {
    TestTemplate t = ClockTemplate("MoCA", "11:10");
    t.regions.push_back(Canvas("cube", {70, 10, 140, 75}, "complex_figure"));
    return t;
  }
  if (test_id == "ROCF") {
    return TestTemplate{"ROCF",
                        {},
                        {Canvas("figure", {20, 40, 190, 260},
                                "circle,rectangle,triangle,line")}};
  }
  return TrailTemplate(25);
}

}  // namespace inkassess
