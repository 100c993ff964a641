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

#ifndef INKASSESS_RECOGNIZER_CORNERS_H_
#define INKASSESS_RECOGNIZER_CORNERS_H_

#include <span>
#include <vector>

#include "inkassess/ink/types.h"

namespace inkassess {

struct CornerConfig {
  double spacing_mm = 0.25;
  // Half-width of the path neighborhood on each side of a candidate corner.
  double window_mm = 1.5;
  double min_angle_deg = 45.0;
  double merge_mm = 2.0;
  // A stroke is closed when its endpoint gap is below this fraction of its
  // path length; corners are then searched cyclically.
  double closure_ratio = 0.15;
};

struct Corner {
  Point point;
  double arc_mm = 0;
  double angle_deg = 0;
};

struct CornerSet {
  std::vector<Corner> corners;  // ordered by arc length
  bool closed = false;
};

// Turning angle at each resampled point is measured between least-squares
// direction fits of the path just before and just after it. Corners are
// local maxima at or above `min_angle_deg`; of two corners closer than
// `merge_mm` the sharper one wins. Strokes shorter than 2 mm have no corners.
CornerSet DetectCorners(const Stroke& stroke, const CornerConfig& config = {});

// Principal direction of `points`, oriented from the first towards the last
// point. Returns (0, 0) for fewer than two distinct points.
Point PrincipalDirection(std::span<const Point> points);

}  // namespace inkassess

#endif  // INKASSESS_RECOGNIZER_CORNERS_H_
