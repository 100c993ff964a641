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

#ifndef INKASSESS_BATTERY_LAYOUTS_H_
#define INKASSESS_BATTERY_LAYOUTS_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "inkassess/battery/template.h"

namespace inkassess {

// Built-in page layouts. The files under templates/ are these layouts
// written out with `WriteTemplateJson`.
absl::StatusOr<TestTemplate> DefaultTemplate(std::string_view test_id);

// Clock canvas centered on the page; with `preprinted_contour` the face is
// part of the form and only marks and hands are drawn.
TestTemplate ClockTemplate(std::string test_id, std::string target_time,
                           bool preprinted_contour = false);

// `nodes` trail nodes on a serpentine grid, 40 mm apart, five per row.
TestTemplate TrailTemplate(int nodes);

}  // namespace inkassess

#endif  // INKASSESS_BATTERY_LAYOUTS_H_
