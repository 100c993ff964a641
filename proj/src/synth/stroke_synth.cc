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

#include "inkassess/synth/stroke_synth.h"

#include <algorithm>
#include <cmath>

#include "inkassess/ink/geometry.h"
#include "inkassess/status.h"

namespace inkassess {

double NormalSource::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSource::Next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0;
  while (u1 <= 0) u1 = Uniform();
  double u2 = Uniform();
  double radius = std::sqrt(-2 * std::log(u1));
  spare_ = radius * std::sin(2 * kPi * u2);
  has_spare_ = true;
  return radius * std::cos(2 * kPi * u2);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  // splitmix64 finalizer
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

absl::Status ValidateSpec(const SynthSpec& spec) {
  auto invalid = [](const char* msg) {
    return MakeError(ErrorKind::kInvalidSpec, msg);
  };
  if (spec.path.empty()) return invalid("empty base path");
  if (PathLength(spec.path) <= 0) return invalid("base path has zero length");
  if (!(spec.speed_mm_s > 0)) return invalid("speed must be positive");
  if (!(spec.rate_hz > 0)) return invalid("sample rate must be positive");
  if (!(spec.tremor_amplitude_mm >= 0)) return invalid("negative amplitude");
  if (!(spec.tremor_freq_hz >= 0)) return invalid("negative frequency");
  if (!(spec.jitter_sigma_mm >= 0)) return invalid("negative jitter");
  if (!(spec.pressure > 0 && spec.pressure <= 1)) {
    return invalid("pressure must be in (0, 1]");
  }
  if (spec.start_t < 0) return invalid("negative start time");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<RawSample>> GenStroke(const SynthSpec& spec) {
  INKASSESS_RETURN_IF_ERROR(ValidateSpec(spec));
  const std::vector<Point>& path = spec.path;
  std::vector<double> cumulative(path.size(), 0.0);
  for (size_t i = 1; i < path.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + Distance(path[i - 1], path[i]);
  }
  const double length = cumulative.back();
  const double duration_s = length / spec.speed_mm_s;
  const Micros duration_us = std::max<Micros>(
      1, static_cast<Micros>(std::llround(duration_s * 1e6)));

  std::vector<Micros> times;
  for (int64_t k = 0;; ++k) {
    Micros t = static_cast<Micros>(
        std::llround(static_cast<double>(k) * 1e6 / spec.rate_hz));
    if (t >= duration_us) break;
    times.push_back(t);
  }
  times.push_back(duration_us);

  NormalSource noise(spec.seed);
  std::vector<RawSample> out;
  out.reserve(times.size());
  size_t segment = 0;
  for (Micros t_us : times) {
    const double tau = static_cast<double>(t_us) / duration_us;
    double s = length * tau;
    if (spec.speed_profile == SpeedProfile::kMinimumJerk) {
      s = length * tau * tau * tau * (10 - 15 * tau + 6 * tau * tau);
    }
    while (segment + 2 < path.size() && cumulative[segment + 1] < s) {
      ++segment;
    }
    // Skip zero-length segments so the normal is defined.
    size_t seg = segment;
    while (seg + 2 < path.size() &&
           cumulative[seg + 1] - cumulative[seg] <= 0) {
      ++seg;
    }
    const Point& a = path[seg];
    const Point& b = path[std::min(seg + 1, path.size() - 1)];
    double seg_len = cumulative[std::min(seg + 1, path.size() - 1)] -
                     cumulative[seg];
    double u = seg_len > 0 ? std::clamp((s - cumulative[seg]) / seg_len, 0.0,
                                        1.0)
                           : 0.0;
    double x = a.x + u * (b.x - a.x);
    double y = a.y + u * (b.y - a.y);
    if (seg_len > 0 && spec.tremor_amplitude_mm > 0) {
      double nx = -(b.y - a.y) / seg_len;
      double ny = (b.x - a.x) / seg_len;
      double offset = spec.tremor_amplitude_mm *
                      std::sin(2 * kPi * spec.tremor_freq_hz *
                               ToSeconds(t_us));
      x += offset * nx;
      y += offset * ny;
    }
    if (spec.jitter_sigma_mm > 0) {
      x += spec.jitter_sigma_mm * noise.Next();
      y += spec.jitter_sigma_mm * noise.Next();
    }
    double pressure = spec.pressure;
    if (spec.pressure_profile == PressureProfile::kArch) {
      pressure *= 0.6 + 0.4 * std::sin(kPi * tau);
    }
    out.push_back({spec.start_t + t_us, x, y, pressure, true});
  }
  return out;
}

std::vector<Point> LinePath(const Point& a, const Point& b) { return {a, b}; }

Point OnClock(const Point& center, double radius, double clock_deg) {
  double rad = clock_deg * kPi / 180.0;
  return {center.x + radius * std::sin(rad), center.y - radius * std::cos(rad)};
}

std::vector<Point> ArcPath(const Point& center, double radius,
                           double start_deg, double sweep_deg, int segments) {
  std::vector<Point> out;
  for (int i = 0; i <= segments; ++i) {
    out.push_back(
        OnClock(center, radius, start_deg + sweep_deg * i / segments));
  }
  return out;
}

std::vector<Point> ClosedPath(const std::vector<Point>& vertices,
                              size_t start) {
  std::vector<Point> out;
  for (size_t i = 0; i <= vertices.size(); ++i) {
    out.push_back(vertices[(start + i) % vertices.size()]);
  }
  return out;
}

std::vector<Point> RegularPolygon(const Point& center, double radius, int n,
                                  double first_vertex_deg) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(OnClock(center, radius, first_vertex_deg + 360.0 * i / n));
  }
  return out;
}

}  // namespace inkassess
