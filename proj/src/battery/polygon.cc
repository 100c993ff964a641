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

#include "inkassess/battery/polygon.h"

#include <algorithm>

#include "inkassess/ink/geometry.h"

namespace inkassess {
namespace {

double Cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point> ConvexHull(std::span<const Point> points) {
  std::vector<Point> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Point> hull(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && Cross(hull[k - 2], hull[k - 1], p[i - 1]) <= 0) --k;
    hull[k++] = p[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

double PolygonArea(std::span<const Point> polygon) {
  double area = 0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    area += a.x * b.y - b.x * a.y;
  }
  return area / 2;
}

std::vector<Point> ClipConvex(std::span<const Point> subject,
                              std::span<const Point> clip, double merge_mm) {
  std::vector<Point> output(subject.begin(), subject.end());
  if (clip.size() < 3) return {};
  const double orientation = PolygonArea(clip) >= 0 ? 1.0 : -1.0;
  for (size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Point& a = clip[e];
    const Point& b = clip[(e + 1) % clip.size()];
    auto inside = [&](const Point& p) {
      return orientation * Cross(a, b, p) >= 0;
    };
    std::vector<Point> input = std::move(output);
    output.clear();
    for (size_t i = 0; i < input.size(); ++i) {
      const Point& cur = input[i];
      const Point& prev = input[(i + input.size() - 1) % input.size()];
      bool cur_in = inside(cur);
      bool prev_in = inside(prev);
      if (cur_in != prev_in) {
        double d1 = Cross(a, b, prev);
        double d2 = Cross(a, b, cur);
        double t = d1 / (d1 - d2);
        output.push_back(
            {prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
      if (cur_in) output.push_back(cur);
    }
  }
  std::vector<Point> merged;
  for (const Point& p : output) {
    if (merged.empty() || Distance(merged.back(), p) >= merge_mm) {
      merged.push_back(p);
    }
  }
  while (merged.size() > 1 && Distance(merged.front(), merged.back()) < merge_mm) {
    merged.pop_back();
  }
  return merged;
}

}  // namespace inkassess
