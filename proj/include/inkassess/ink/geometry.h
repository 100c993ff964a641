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

#ifndef INKASSESS_INK_GEOMETRY_H_
#define INKASSESS_INK_GEOMETRY_H_

#include <cmath>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"

namespace inkassess {

inline constexpr double kPi = 3.14159265358979323846;

inline double Distance(const Point& a, const Point& b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline Point PointOf(const RawSample& s) { return {s.x, s.y}; }
inline Point PointOf(const TimedPoint& p) { return {p.x, p.y}; }

std::vector<Point> PointsOf(std::span<const RawSample> samples);

double PathLength(std::span<const RawSample> samples);
double PathLength(std::span<const Point> points);

// Samples the stroke polyline at uniform arc-length `spacing_mm`, starting at
// the first sample. The last sample is always emitted, so the final step may
// be shorter than the spacing. Timestamps are interpolated linearly within
// each polyline segment. A zero-length stroke yields its single point.
absl::StatusOr<std::vector<TimedPoint>> ResampleUniform(const Stroke& stroke,
                                                        double spacing_mm);

absl::StatusOr<BBox> ComputeBBox(std::span<const Stroke> strokes);
BBox BBoxOf(std::span<const RawSample> samples);

// Length of the polyline that lies inside `box` (segment clipping).
double PolylineLengthInBox(std::span<const RawSample> samples,
                           const BBox& box);

// Length of a segment inside a circle.
double SegmentLengthInCircle(const Point& a, const Point& b,
                             const Point& center, double radius);

bool SegmentsIntersect(const Point& a, const Point& b, const Point& c,
                       const Point& d);
bool PolylinesIntersect(std::span<const Point> a, std::span<const Point> b);

double PointSegmentDistance(const Point& p, const Point& a, const Point& b);
double PointPolylineDistance(const Point& p, std::span<const Point> polyline);

// Signed angle from direction `u` to direction `v`, in radians (-pi, pi].
double TurningAngle(double ux, double uy, double vx, double vy);

}  // namespace inkassess

#endif  // INKASSESS_INK_GEOMETRY_H_
