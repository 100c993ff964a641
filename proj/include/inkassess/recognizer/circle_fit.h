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

#ifndef INKASSESS_RECOGNIZER_CIRCLE_FIT_H_
#define INKASSESS_RECOGNIZER_CIRCLE_FIT_H_

#include <span>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"

namespace inkassess {

struct CircleFit {
  Point center;
  double radius = 0;
  // RMS of |distance to center - radius| over the input points.
  double rms_residual = 0;
};

// Algebraic least-squares circle: minimizes sum (x^2 + y^2 + Dx + Ey + F)^2.
// Points are centered and scaled before solving. Fails with CollinearPoints
// when the design matrix has reciprocal condition number below 1e-12 (this
// includes fewer than three distinct points).
absl::StatusOr<CircleFit> FitCircle(std::span<const Point> points);

}  // namespace inkassess

#endif  // INKASSESS_RECOGNIZER_CIRCLE_FIT_H_
