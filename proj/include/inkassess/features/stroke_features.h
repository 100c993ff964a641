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

#ifndef INKASSESS_FEATURES_STROKE_FEATURES_H_
#define INKASSESS_FEATURES_STROKE_FEATURES_H_

#include <span>
#include <string_view>
#include <vector>

#include "inkassess/features/feature_vector.h"
#include "inkassess/ink/types.h"

namespace inkassess {

// Arc-length spacing used by every path-shape feature.
inline constexpr double kShapeResampleMm = 0.25;
inline constexpr int kTremorSmoothingWindow = 9;
// Strokes at or below this path length get zero tremor and path-shape
// features.
inline constexpr double kMinShapePathMm = 2.0;
inline constexpr double kDirectionChangeMinDeg = 20.0;

struct TremorResult {
  double rms_mm = 0;
  double dominant_freq_hz = 0;
};

TremorResult TremorIndex(const Stroke& stroke);

// Centered moving average with a window that shrinks symmetrically at open
// ends. With `cyclic` the path wraps around instead.
std::vector<Point> MovingAverage(std::span<const Point> points, int window,
                                 bool cyclic);

FeatureVector StrokeFeatures(const Stroke& stroke,
                             std::string_view session_id = "");

}  // namespace inkassess

#endif  // INKASSESS_FEATURES_STROKE_FEATURES_H_
