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

#include "inkassess/recognizer/circle_fit.h"

#include <cmath>

#include "Eigen/Dense"
#include "inkassess/ink/geometry.h"
#include "inkassess/status.h"

namespace inkassess {

absl::StatusOr<CircleFit> FitCircle(std::span<const Point> points) {
  constexpr double kMinReciprocalCondition = 1e-12;
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  if (n < 3) {
    return MakeError(ErrorKind::kCollinearPoints,
                     "circle fit needs at least 3 points");
  }
  double mx = 0;
  double my = 0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double scale = 0;
  for (const Point& p : points) scale = std::max(scale, Distance(p, {mx, my}));
  if (scale == 0) {
    return MakeError(ErrorKind::kCollinearPoints, "all points coincide");
  }

  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double u = (points[static_cast<size_t>(i)].x - mx) / scale;
    double v = (points[static_cast<size_t>(i)].y - my) / scale;
    a(i, 0) = u;
    a(i, 1) = v;
    a(i, 2) = 1;
    b(i) = -(u * u + v * v);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(0) == 0 || sv(2) / sv(0) < kMinReciprocalCondition) {
    return MakeError(ErrorKind::kCollinearPoints,
                     "circle fit system is singular");
  }
  Eigen::Vector3d def = svd.solve(b);
  double cu = -def(0) / 2;
  double cv = -def(1) / 2;
  double r2 = cu * cu + cv * cv - def(2);
  if (!(r2 > 0)) {
    return MakeError(ErrorKind::kCollinearPoints, "degenerate circle");
  }
  CircleFit fit;
  fit.center = {mx + cu * scale, my + cv * scale};
  fit.radius = std::sqrt(r2) * scale;
  double ss = 0;
  for (const Point& p : points) {
    double d = Distance(p, fit.center) - fit.radius;
    ss += d * d;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

}  // namespace inkassess
