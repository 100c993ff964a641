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

#include "inkassess/features/stroke_features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "inkassess/ink/geometry.h"

namespace inkassess {
namespace {

struct Vec2 {
  double x = 0;
  double y = 0;
};

double Norm(const Vec2& v) { return std::hypot(v.x, v.y); }

// Central differences of `values` over sample time, one-sided at the ends.
std::vector<Vec2> Differentiate(std::span<const Vec2> values,
                                std::span<const double> t_s) {
  size_t n = values.size();
  std::vector<Vec2> out(n);
  if (n < 2) return out;
  for (size_t i = 0; i < n; ++i) {
    size_t lo = i == 0 ? 0 : i - 1;
    size_t hi = i + 1 == n ? n - 1 : i + 1;
    double dt = t_s[hi] - t_s[lo];
    if (dt <= 0) continue;
    out[i] = {(values[hi].x - values[lo].x) / dt,
              (values[hi].y - values[lo].y) / dt};
  }
  return out;
}

struct Stats {
  double mean = 0;
  double max = 0;
  double min = 0;
  double std = 0;
};

Stats Summarize(std::span<const double> values) {
  Stats s;
  if (values.empty()) return s;
  s.max = values[0];
  s.min = values[0];
  double sum = 0;
  for (double v : values) {
    sum += v;
    s.max = std::max(s.max, v);
    s.min = std::min(s.min, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

std::vector<Point> ToPoints(std::span<const TimedPoint> timed) {
  std::vector<Point> points;
  points.reserve(timed.size());
  for (const TimedPoint& p : timed) points.push_back({p.x, p.y});
  return points;
}

}  // namespace

std::vector<Point> MovingAverage(std::span<const Point> points, int window,
                                 bool cyclic) {
  const int n = static_cast<int>(points.size());
  const int half = window / 2;
  std::vector<Point> out(points.size());
  for (int j = 0; j < n; ++j) {
    int h = cyclic ? std::min(half, (n - 1) / 2)
                   : std::min({half, j, n - 1 - j});
    double sx = 0;
    double sy = 0;
    for (int k = -h; k <= h; ++k) {
      const Point& p = points[static_cast<size_t>(((j + k) % n + n) % n)];
      sx += p.x;
      sy += p.y;
    }
    out[static_cast<size_t>(j)] = {sx / (2 * h + 1), sy / (2 * h + 1)};
  }
  return out;
}

TremorResult TremorIndex(const Stroke& stroke) {
  if (stroke.samples.size() < 2 ||
      PathLength(stroke.samples) <= kMinShapePathMm) {
    return {};
  }
  auto resampled = ResampleUniform(stroke, kShapeResampleMm);
  if (!resampled.ok() || resampled->size() < 3) return {};
  std::vector<Point> path = ToPoints(*resampled);
  std::vector<Point> smooth =
      MovingAverage(path, kTremorSmoothingWindow, /*cyclic=*/false);
  const size_t m = path.size();
  std::vector<double> residual(m, 0.0);
  double sum_sq = 0;
  for (size_t j = 0; j < m; ++j) {
    const Point& ahead = smooth[std::min(j + 1, m - 1)];
    const Point& behind = smooth[j == 0 ? 0 : j - 1];
    double tx = ahead.x - behind.x;
    double ty = ahead.y - behind.y;
    double len = std::hypot(tx, ty);
    if (len > 0) {
      residual[j] = ((path[j].x - smooth[j].x) * -ty +
                     (path[j].y - smooth[j].y) * tx) /
                    len;
    }
    sum_sq += residual[j] * residual[j];
  }
  TremorResult result;
  result.rms_mm = std::sqrt(sum_sq / static_cast<double>(m));

  // Residuals within numerical noise carry no sign.
  constexpr double kSignEpsilonMm = 1e-9;
  int crossings = 0;
  int previous_sign = 0;
  for (double r : residual) {
    if (std::abs(r) <= kSignEpsilonMm) continue;
    int sign = r > 0 ? 1 : -1;
    if (previous_sign != 0 && sign != previous_sign) ++crossings;
    previous_sign = sign;
  }
  double duration_s = ToSeconds(stroke.DurationUs());
  if (duration_s > 0) result.dominant_freq_hz = crossings / (2 * duration_s);
  return result;
}

FeatureVector StrokeFeatures(const Stroke& stroke,
                             std::string_view session_id) {
  FeatureVector f(FeatureScope{std::string(session_id), FeatureLevel::kStroke,
                               stroke.index});
  const std::vector<RawSample>& s = stroke.samples;
  const size_t n = s.size();
  f.Set("sample_count", static_cast<double>(n));
  f.Set("straightness", 1.0);
  if (n == 0) return f;

  const double duration_s = ToSeconds(stroke.DurationUs());
  const double path = PathLength(s);
  const double displacement = Distance(PointOf(s.front()), PointOf(s.back()));
  f.Set("duration_s", duration_s);
  if (n > 1 && duration_s > 0) {
    f.Set("sampling_rate_hz", static_cast<double>(n - 1) / duration_s);
  }
  f.Set("path_length_mm", path);
  f.Set("displacement_mm", displacement);
  if (path > 0) f.Set("straightness", std::min(1.0, displacement / path));
  BBox box = BBoxOf(s);
  f.Set("bbox_width_mm", box.Width());
  f.Set("bbox_height_mm", box.Height());

  std::vector<double> pressure;
  pressure.reserve(n);
  for (const RawSample& r : s) pressure.push_back(r.pressure);
  Stats p = Summarize(pressure);
  f.Set("pressure_mean", p.mean);
  f.Set("pressure_max", p.max);
  f.Set("pressure_min", p.min);
  f.Set("pressure_std", p.std);

  if (n >= 2 && duration_s > 0) {
    std::vector<double> t_s(n);
    std::vector<Vec2> position(n);
    for (size_t i = 0; i < n; ++i) {
      t_s[i] = ToSeconds(s[i].t - s.front().t);
      position[i] = {s[i].x, s[i].y};
    }
    std::vector<Vec2> velocity = Differentiate(position, t_s);
    std::vector<Vec2> accel = Differentiate(velocity, t_s);
    std::vector<Vec2> jerk = Differentiate(accel, t_s);
    std::vector<double> speed(n);
    std::vector<double> accel_mag(n);
    std::vector<double> jerk_mag(n);
    for (size_t i = 0; i < n; ++i) {
      speed[i] = Norm(velocity[i]);
      accel_mag[i] = Norm(accel[i]);
      jerk_mag[i] = Norm(jerk[i]);
    }
    Stats v = Summarize(speed);
    f.Set("speed_mean_mm_s", v.mean);
    f.Set("speed_max_mm_s", v.max);
    f.Set("speed_std_mm_s", v.std);
    size_t peak = static_cast<size_t>(
        std::max_element(speed.begin(), speed.end()) - speed.begin());
    f.Set("time_to_peak_speed_s", t_s[peak]);
    Stats a = Summarize(accel_mag);
    f.Set("accel_abs_mean_mm_s2", a.mean);
    f.Set("accel_abs_max_mm_s2", a.max);
    f.Set("jerk_abs_mean_mm_s3", Summarize(jerk_mag).mean);
  }

  if (n >= 2 && path > kMinShapePathMm) {
    auto resampled = ResampleUniform(stroke, kShapeResampleMm);
    if (resampled.ok() && resampled->size() >= 3) {
      std::vector<Point> q = ToPoints(*resampled);
      const double min_turn = kDirectionChangeMinDeg * kPi / 180.0;
      double total_turning = 0;
      double curvature_sum = 0;
      double curvature_max = 0;
      int direction_changes = 0;
      int last_sign = 0;
      size_t interior = 0;
      for (size_t j = 1; j + 1 < q.size(); ++j) {
        double ux = q[j].x - q[j - 1].x;
        double uy = q[j].y - q[j - 1].y;
        double vx = q[j + 1].x - q[j].x;
        double vy = q[j + 1].y - q[j].y;
        double theta = TurningAngle(ux, uy, vx, vy);
        double arc = (std::hypot(ux, uy) + std::hypot(vx, vy)) / 2;
        double kappa = arc > 0 ? std::abs(theta) / arc : 0;
        total_turning += std::abs(theta);
        curvature_sum += kappa;
        curvature_max = std::max(curvature_max, kappa);
        ++interior;
        if (std::abs(theta) > min_turn) {
          int sign = theta > 0 ? 1 : -1;
          if (last_sign != 0 && sign != last_sign) ++direction_changes;
          last_sign = sign;
        }
      }
      f.Set("direction_change_count", direction_changes);
      f.Set("total_turning_rad", total_turning);
      if (interior > 0) {
        f.Set("curvature_mean_1_mm",
              curvature_sum / static_cast<double>(interior));
      }
      f.Set("curvature_max_1_mm", curvature_max);
    }
    TremorResult tremor = TremorIndex(stroke);
    f.Set("tremor_index_mm", tremor.rms_mm);
    f.Set("tremor_dominant_freq_hz", tremor.dominant_freq_hz);
  }
  return f;
}

}  // namespace inkassess
