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

#include "inkassess/recognizer/corners.h"

#include <algorithm>
#include <cmath>

#include "inkassess/features/stroke_features.h"
#include "inkassess/ink/geometry.h"

namespace inkassess {

Point PrincipalDirection(std::span<const Point> points) {
  if (points.size() < 2) return {0, 0};
  double mx = 0;
  double my = 0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxx = 0;
  double syy = 0;
  double sxy = 0;
  for (const Point& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx + syy <= 0) return {0, 0};
  double theta = 0.5 * std::atan2(2 * sxy, sxx - syy);
  Point d{std::cos(theta), std::sin(theta)};
  double ox = points.back().x - points.front().x;
  double oy = points.back().y - points.front().y;
  if (d.x * ox + d.y * oy < 0) d = {-d.x, -d.y};
  return d;
}

CornerSet DetectCorners(const Stroke& stroke, const CornerConfig& config) {
  CornerSet result;
  if (stroke.samples.size() < 2 ||
      PathLength(stroke.samples) < kMinShapePathMm) {
    return result;
  }
  auto resampled = ResampleUniform(stroke, config.spacing_mm);
  if (!resampled.ok()) return result;
  std::vector<Point> q;
  q.reserve(resampled->size());
  for (const TimedPoint& p : *resampled) q.push_back({p.x, p.y});
  const double length = PathLength(q);
  result.closed =
      Distance(q.front(), q.back()) < config.closure_ratio * length;
  if (result.closed && q.size() > 1 &&
      Distance(q.front(), q.back()) < 0.5 * config.spacing_mm) {
    q.pop_back();
  }

  const int n = static_cast<int>(q.size());
  const int k = std::max(
      1, static_cast<int>(std::lround(config.window_mm / config.spacing_mm)));
  const bool cyclic = result.closed && n > 2 * k + 1;
  std::vector<Point> smooth = MovingAverage(q, 3, cyclic);

  std::vector<double> angle(static_cast<size_t>(n), 0.0);
  std::vector<Point> before(static_cast<size_t>(k) + 1);
  std::vector<Point> after(static_cast<size_t>(k) + 1);
  for (int j = 0; j < n; ++j) {
    if (!cyclic && (j - k < 0 || j + k >= n)) continue;
    for (int i = 0; i <= k; ++i) {
      before[static_cast<size_t>(i)] =
          smooth[static_cast<size_t>(((j - k + i) % n + n) % n)];
      after[static_cast<size_t>(i)] =
          smooth[static_cast<size_t>((j + i) % n)];
    }
    Point d1 = PrincipalDirection(before);
    Point d2 = PrincipalDirection(after);
    angle[static_cast<size_t>(j)] =
        std::abs(TurningAngle(d1.x, d1.y, d2.x, d2.y)) * 180.0 / kPi;
  }

  auto at = [&](int j) {
    if (cyclic) return angle[static_cast<size_t>((j % n + n) % n)];
    return (j < 0 || j >= n) ? 0.0 : angle[static_cast<size_t>(j)];
  };
  std::vector<int> candidates;
  for (int j = 0; j < n; ++j) {
    double a = angle[static_cast<size_t>(j)];
    if (a >= config.min_angle_deg && a >= at(j - 1) && a >= at(j + 1)) {
      candidates.push_back(j);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return angle[static_cast<size_t>(a)] > angle[static_cast<size_t>(b)];
  });
  std::vector<int> kept;
  for (int j : candidates) {
    bool isolated = true;
    for (int i : kept) {
      int steps = std::abs(i - j);
      if (cyclic) steps = std::min(steps, n - steps);
      if (steps * config.spacing_mm < config.merge_mm) {
        isolated = false;
        break;
      }
    }
    if (isolated) kept.push_back(j);
  }
  std::sort(kept.begin(), kept.end());
  for (int j : kept) {
    result.corners.push_back({q[static_cast<size_t>(j)],
                              j * config.spacing_mm,
                              angle[static_cast<size_t>(j)]});
  }
  return result;
}

}  // namespace inkassess
