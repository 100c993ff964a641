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

#ifndef INKASSESS_RECOGNIZER_CLASSIFIER_H_
#define INKASSESS_RECOGNIZER_CLASSIFIER_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "inkassess/ink/types.h"
#include "inkassess/recognizer/corners.h"
#include "inkassess/recognizer/grouping.h"
#include "inkassess/recognizer/text_recognizer.h"

namespace inkassess {

enum class Shape {
  kLine,
  kCircle,
  kTriangle,
  kRectangle,
  kDiamond,
  kPentagon,
  kCrossOut,
  kDot,
  kComplexFigure,
  kUnrecognizedText,
};

std::string_view ShapeName(Shape shape);
std::optional<Shape> ParseShape(std::string_view name);

// Evidence keys, present when the corresponding rule was evaluated:
//   bbox_diagonal_mm          diagonal of the group bbox
//   stroke_count              strokes in the group
//   spread_ratio              sqrt(minor / major) principal variance ratio
//   corner_count              corners over all strokes of the group
//   closure_gap_ratio         endpoint gap / path length (single stroke)
//   fit_residual_ratio        circle fit RMS residual / radius
//   circle_cx, circle_cy, circle_r   fitted circle, mm
//   min_corner_angle_deg      weakest corner of a polygon
//   edge_axis_deviation_deg   median deviation of polygon edges from the axes
//   text_confidence           confidence of the text recognizer
struct ShapeLabel {
  Shape label = Shape::kUnrecognizedText;
  double confidence = 0;
  std::map<std::string, double> evidence;
  // Set when the text recognizer produced a reading.
  std::string text;
};

struct ClassifierConfig {
  double dot_diagonal_mm = 1.5;
  double line_spread_ratio = 0.05;
  double closure_ratio = 0.15;
  double circle_residual_ratio = 0.15;
  int circle_max_corners = 1;
  double axis_tolerance_deg = 15.0;
  CornerConfig corners;
};

// First matching rule wins: dot, line, cross_out, closed single-stroke shape
// (circle or polygon by corner count), complex_figure for multi-stroke
// groups, otherwise unrecognized_text. Confidence is 0.5 plus half the
// relative margin by which the decisive measurement cleared its threshold.
ShapeLabel ClassifyStrokes(std::span<const Stroke* const> strokes,
                           const ClassifierConfig& config = {},
                           const TextRecognizer* text = nullptr);

ShapeLabel ClassifyGroup(const StrokeGroup& group, const InkSession& session,
                         const ClassifierConfig& config = {},
                         const TextRecognizer* text = nullptr);

// sqrt(minor / major) eigenvalue ratio of the point covariance; 0 for fewer
// than two distinct points.
double SpreadRatio(std::span<const Point> points);

// Points resampled at 0.25 mm along every stroke.
std::vector<Point> ResampledPoints(std::span<const Stroke* const> strokes);

}  // namespace inkassess

#endif  // INKASSESS_RECOGNIZER_CLASSIFIER_H_
