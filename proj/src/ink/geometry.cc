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

#include "inkassess/ink/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inkassess/status.h"

namespace inkassess {

std::vector<Point> PointsOf(std::span<const RawSample> samples) {
  std::vector<Point> points;
  points.reserve(samples.size());
  for (const RawSample& s : samples) points.push_back(PointOf(s));
  return points;
}

double PathLength(std::span<const RawSample> samples) {
  double length = 0;
  for (size_t i = 1; i < samples.size(); ++i) {
    length += Distance(PointOf(samples[i - 1]), PointOf(samples[i]));
  }
  return length;
}

double PathLength(std::span<const Point> points) {
  double length = 0;
  for (size_t i = 1; i < points.size(); ++i) {
    length += Distance(points[i - 1], points[i]);
  }
  return length;
}

absl::StatusOr<std::vector<TimedPoint>> ResampleUniform(const Stroke& stroke,
                                                        double spacing_mm) {
  if (!(spacing_mm > 0) || !std::isfinite(spacing_mm)) {
    return absl::InvalidArgumentError("resample spacing must be positive");
  }
  const std::vector<RawSample>& s = stroke.samples;
  if (s.empty()) return MakeError(ErrorKind::kEmptyInput, "empty stroke");
  auto timed = [](const RawSample& r) {
    return TimedPoint{r.x, r.y, static_cast<double>(r.t)};
  };
  double total = PathLength(s);
  if (total <= 0) return std::vector<TimedPoint>{timed(s.front())};

  constexpr double kEndEpsilon = 1e-9;
  std::vector<TimedPoint> out;
  out.reserve(static_cast<size_t>(total / spacing_mm) + 2);
  size_t seg = 0;
  double seg_start = 0;  // arc length at s[seg]
  for (long k = 0;; ++k) {
    double target = static_cast<double>(k) * spacing_mm;
    if (target >= total - kEndEpsilon) break;
    double seg_len = Distance(PointOf(s[seg]), PointOf(s[seg + 1]));
    while (seg + 2 < s.size() && seg_start + seg_len < target) {
      seg_start += seg_len;
      ++seg;
      seg_len = Distance(PointOf(s[seg]), PointOf(s[seg + 1]));
    }
    double u = seg_len > 0 ? std::clamp((target - seg_start) / seg_len, 0.0, 1.0)
                           : 0.0;
    const RawSample& a = s[seg];
    const RawSample& b = s[seg + 1];
    out.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                   static_cast<double>(a.t) +
                       u * static_cast<double>(b.t - a.t)});
  }
  out.push_back(timed(s.back()));
  return out;
}

BBox BBoxOf(std::span<const RawSample> samples) {
  BBox box{samples.front().x, samples.front().y, samples.front().x,
           samples.front().y};
  for (const RawSample& s : samples) box.Extend(s.x, s.y);
  return box;
}

absl::StatusOr<BBox> ComputeBBox(std::span<const Stroke> strokes) {
  std::optional<BBox> box;
  for (const Stroke& stroke : strokes) {
    if (stroke.samples.empty()) continue;
    BBox b = BBoxOf(stroke.samples);
    if (box.has_value()) {
      box->Extend(b);
    } else {
      box = b;
    }
  }
  if (!box.has_value()) return MakeError(ErrorKind::kEmptyInput, "no samples");
  return *box;
}

namespace {

// Liang-Barsky clip of segment a->b against `box`; returns the inside length.
double ClippedSegmentLength(const Point& a, const Point& b, const BBox& box) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double u0 = 0;
  double u1 = 1;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - box.min_x, box.max_x - a.x, a.y - box.min_y,
                       box.max_y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] < 0) return 0;
      continue;
    }
    double r = q[i] / p[i];
    if (p[i] < 0) {
      u0 = std::max(u0, r);
    } else {
      u1 = std::min(u1, r);
    }
    if (u0 > u1) return 0;
  }
  return (u1 - u0) * std::hypot(dx, dy);
}

double Cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool OnSegment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

double PolylineLengthInBox(std::span<const RawSample> samples,
                           const BBox& box) {
  double length = 0;
  for (size_t i = 1; i < samples.size(); ++i) {
    length += ClippedSegmentLength(PointOf(samples[i - 1]),
                                   PointOf(samples[i]), box);
  }
  return length;
}

double SegmentLengthInCircle(const Point& a, const Point& b,
                             const Point& center, double radius) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double fx = a.x - center.x;
  double fy = a.y - center.y;
  double qa = dx * dx + dy * dy;
  if (qa == 0) return 0;
  double qb = 2 * (fx * dx + fy * dy);
  double qc = fx * fx + fy * fy - radius * radius;
  double disc = qb * qb - 4 * qa * qc;
  if (disc <= 0) return 0;
  double root = std::sqrt(disc);
  double u0 = std::max(0.0, (-qb - root) / (2 * qa));
  double u1 = std::min(1.0, (-qb + root) / (2 * qa));
  if (u1 <= u0) return 0;
  return (u1 - u0) * std::sqrt(qa);
}

bool SegmentsIntersect(const Point& a, const Point& b, const Point& c,
                       const Point& d) {
  double d1 = Cross(c, d, a);
  double d2 = Cross(c, d, b);
  double d3 = Cross(a, b, c);
  double d4 = Cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && OnSegment(a, c, d)) return true;
  if (d2 == 0 && OnSegment(b, c, d)) return true;
  if (d3 == 0 && OnSegment(c, a, b)) return true;
  if (d4 == 0 && OnSegment(d, a, b)) return true;
  return false;
}

bool PolylinesIntersect(std::span<const Point> a, std::span<const Point> b) {
  for (size_t i = 1; i < a.size(); ++i) {
    BBox sa{std::min(a[i - 1].x, a[i].x), std::min(a[i - 1].y, a[i].y),
            std::max(a[i - 1].x, a[i].x), std::max(a[i - 1].y, a[i].y)};
    for (size_t j = 1; j < b.size(); ++j) {
      BBox sb{std::min(b[j - 1].x, b[j].x), std::min(b[j - 1].y, b[j].y),
              std::max(b[j - 1].x, b[j].x), std::max(b[j - 1].y, b[j].y)};
      if (BoxGap(sa, sb) > 0) continue;
      if (SegmentsIntersect(a[i - 1], a[i], b[j - 1], b[j])) return true;
    }
  }
  return false;
}

double PointSegmentDistance(const Point& p, const Point& a, const Point& b) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  if (len2 == 0) return Distance(p, a);
  double u = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return Distance(p, {a.x + u * dx, a.y + u * dy});
}

double PointPolylineDistance(const Point& p, std::span<const Point> polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return Distance(p, polyline.front());
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < polyline.size(); ++i) {
    best = std::min(best, PointSegmentDistance(p, polyline[i - 1], polyline[i]));
  }
  return best;
}

double TurningAngle(double ux, double uy, double vx, double vy) {
  return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
}

}  // namespace inkassess
