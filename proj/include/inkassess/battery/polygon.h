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

#ifndef INKASSESS_BATTERY_POLYGON_H_
#define INKASSESS_BATTERY_POLYGON_H_

#include <span>
#include <vector>

#include "inkassess/ink/types.h"

namespace inkassess {

// Counter-clockwise hull (in y-up orientation), without repeated points.
std::vector<Point> ConvexHull(std::span<const Point> points);

// Signed shoelace area.
double PolygonArea(std::span<const Point> polygon);

// Intersection of two convex polygons (Sutherland-Hodgman). Consecutive
// vertices closer than `merge_mm` are merged.
std::vector<Point> ClipConvex(std::span<const Point> subject,
                              std::span<const Point> clip,
                              double merge_mm = 0.5);

}  // namespace inkassess

#endif  // INKASSESS_BATTERY_POLYGON_H_
