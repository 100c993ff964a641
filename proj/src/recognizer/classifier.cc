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

#include "inkassess/recognizer/classifier.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "inkassess/features/stroke_features.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/recognizer/circle_fit.h"

namespace inkassess {
namespace {

constexpr std::array<std::string_view, 10> kShapeNames = {
    "line",     "circle",   "triangle", "rectangle",      "diamond",
    "pentagon", "cross_out", "dot",     "complex_figure", "unrecognized_text",
};

double Confidence(double margin) {
  return 0.5 + 0.5 * std::clamp(margin, 0.0, 1.0);
}

ShapeLabel Label(Shape shape, double margin, std::map<std::string, double> ev) {
  return {shape, Confidence(margin), std::move(ev), ""};
}

std::vector<Point> StrokePoints(const Stroke& stroke) {
  const Stroke* one[] = {&stroke};
  return ResampledPoints(one);
}

double MedianAxisDeviation(const std::vector<Corner>& corners) {
  std::vector<double> dev;
  for (size_t i = 0; i < corners.size(); ++i) {
    const Point& a = corners[i].point;
    const Point& b = corners[(i + 1) % corners.size()].point;
    double deg = std::abs(std::atan2(b.y - a.y, b.x - a.x)) * 180.0 / kPi;
    double folded = std::fmod(deg, 90.0);
    dev.push_back(std::min(folded, 90.0 - folded));
  }
  std::sort(dev.begin(), dev.end());
  size_t m = dev.size();
  return m % 2 == 1 ? dev[m / 2] : (dev[m / 2 - 1] + dev[m / 2]) / 2;
}

}  // namespace

std::string_view ShapeName(Shape shape) {
  return kShapeNames[static_cast<size_t>(shape)];
}

std::optional<Shape> ParseShape(std::string_view name) {
  for (size_t i = 0; i < kShapeNames.size(); ++i) {
    if (kShapeNames[i] == name) return static_cast<Shape>(i);
  }
  return std::nullopt;
}

double SpreadRatio(std::span<const Point> points) {
  if (points.size() < 2) return 0;
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
  double half_trace = (sxx + syy) / 2;
  double root = std::sqrt(std::max(
      0.0, (sxx - syy) * (sxx - syy) / 4 + sxy * sxy));
  double major = half_trace + root;
  double minor = std::max(0.0, half_trace - root);
  if (major <= 0) return 0;
  return std::sqrt(minor / major);
}

std::vector<Point> ResampledPoints(std::span<const Stroke* const> strokes) {
  std::vector<Point> out;
  for (const Stroke* stroke : strokes) {
    if (stroke->samples.empty()) continue;
    auto resampled = ResampleUniform(*stroke, kShapeResampleMm);
    if (!resampled.ok()) continue;
    for (const TimedPoint& p : *resampled) out.push_back({p.x, p.y});
  }
  return out;
}

ShapeLabel ClassifyStrokes(std::span<const Stroke* const> strokes,
                           const ClassifierConfig& config,
                           const TextRecognizer* text) {
  std::map<std::string, double> ev;
  BBox box;
  bool first = true;
  for (const Stroke* s : strokes) {
    if (s->samples.empty()) continue;
    BBox b = BBoxOf(s->samples);
    if (first) {
      box = b;
      first = false;
    } else {
      box.Extend(b);
    }
  }
  const double diagonal = box.Diagonal();
  ev["bbox_diagonal_mm"] = diagonal;
  ev["stroke_count"] = static_cast<double>(strokes.size());

  // 1. Dot.
  if (diagonal < config.dot_diagonal_mm) {
    return Label(Shape::kDot,
                 (config.dot_diagonal_mm - diagonal) / config.dot_diagonal_mm,
                 std::move(ev));
  }

  // 2. Line.
  std::vector<Point> points = ResampledPoints(strokes);
  const double spread = SpreadRatio(points);
  ev["spread_ratio"] = spread;
  std::vector<CornerSet> corner_sets;
  int corner_count = 0;
  for (const Stroke* s : strokes) {
    corner_sets.push_back(DetectCorners(*s, config.corners));
    corner_count += static_cast<int>(corner_sets.back().corners.size());
  }
  ev["corner_count"] = corner_count;
  if (spread < config.line_spread_ratio && corner_count == 0) {
    return Label(Shape::kLine,
                 (config.line_spread_ratio - spread) / config.line_spread_ratio,
                 std::move(ev));
  }

  // 3. Cross-out: two or more straight strokes, connected by crossings.
  if (strokes.size() >= 2) {
    std::vector<std::vector<Point>> paths;
    double worst_spread = 0;
    bool all_lines = true;
    for (size_t i = 0; i < strokes.size() && all_lines; ++i) {
      paths.push_back(StrokePoints(*strokes[i]));
      double r = SpreadRatio(paths.back());
      worst_spread = std::max(worst_spread, r);
      all_lines = r < config.line_spread_ratio &&
                  corner_sets[i].corners.empty() &&
                  Distance(paths.back().front(), paths.back().back()) >=
                      config.dot_diagonal_mm;
    }
    if (all_lines) {
      std::vector<bool> reached(paths.size(), false);
      std::vector<size_t> frontier = {0};
      reached[0] = true;
      while (!frontier.empty()) {
        size_t i = frontier.back();
        frontier.pop_back();
        for (size_t j = 0; j < paths.size(); ++j) {
          if (!reached[j] && PolylinesIntersect(paths[i], paths[j])) {
            reached[j] = true;
            frontier.push_back(j);
          }
        }
      }
      if (std::all_of(reached.begin(), reached.end(),
                      [](bool r) { return r; })) {
        return Label(
            Shape::kCrossOut,
            (config.line_spread_ratio - worst_spread) / config.line_spread_ratio,
            std::move(ev));
      }
    }
  }

  // 4. Closed single-stroke shapes.
  if (strokes.size() == 1 && strokes[0]->samples.size() >= 2) {
    const Stroke& stroke = *strokes[0];
    const double path = PathLength(stroke.samples);
    const double closure =
        path > 0 ? Distance(PointOf(stroke.samples.front()),
                            PointOf(stroke.samples.back())) /
                       path
                 : 1.0;
    ev["closure_gap_ratio"] = closure;
    if (closure < config.closure_ratio) {
      const double closure_margin =
          (config.closure_ratio - closure) / config.closure_ratio;
      double residual_ratio = std::numeric_limits<double>::infinity();
      if (auto fit = FitCircle(points); fit.ok()) {
        residual_ratio = fit->rms_residual / fit->radius;
        ev["circle_cx"] = fit->center.x;
        ev["circle_cy"] = fit->center.y;
        ev["circle_r"] = fit->radius;
        ev["fit_residual_ratio"] = residual_ratio;
      }
      if (residual_ratio < config.circle_residual_ratio &&
          corner_count <= config.circle_max_corners) {
        return Label(Shape::kCircle,
                     std::min(closure_margin,
                              (config.circle_residual_ratio - residual_ratio) /
                                  config.circle_residual_ratio),
                     std::move(ev));
      }
      const std::vector<Corner>& corners = corner_sets[0].corners;
      if (corner_count >= 3 && corner_count <= 5) {
        double weakest = 180;
        for (const Corner& c : corners) weakest = std::min(weakest, c.angle_deg);
        ev["min_corner_angle_deg"] = weakest;
        const double angle_margin =
            (weakest - config.corners.min_angle_deg) /
            config.corners.min_angle_deg;
        double margin = std::min(closure_margin, angle_margin);
        Shape shape = Shape::kTriangle;
        if (corner_count == 4) {
          double deviation = MedianAxisDeviation(corners);
          ev["edge_axis_deviation_deg"] = deviation;
          shape = deviation <= config.axis_tolerance_deg ? Shape::kRectangle
                                                         : Shape::kDiamond;
          margin = std::min(margin,
                            std::abs(deviation - config.axis_tolerance_deg) /
                                config.axis_tolerance_deg);
        } else if (corner_count == 5) {
          shape = Shape::kPentagon;
        }
        return Label(shape, margin, std::move(ev));
      }
    }
  }

  // 5. Multi-stroke figures.
  if (strokes.size() >= 2) {
    return Label(Shape::kComplexFigure, 0, std::move(ev));
  }

  // 6. Handwriting.
  TextHypothesis reading;
  if (text != nullptr) reading = text->Recognize(strokes);
  ev["text_confidence"] = reading.confidence;
  ShapeLabel label{Shape::kUnrecognizedText,
                   std::clamp(reading.confidence, 0.0, 1.0), std::move(ev),
                   reading.text};
  return label;
}

ShapeLabel ClassifyGroup(const StrokeGroup& group, const InkSession& session,
                         const ClassifierConfig& config,
                         const TextRecognizer* text) {
  std::vector<const Stroke*> strokes = GroupStrokesOf(group, session);
  return ClassifyStrokes(strokes, config, text);
}

}  // namespace inkassess
