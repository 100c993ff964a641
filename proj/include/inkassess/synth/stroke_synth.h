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

#ifndef INKASSESS_SYNTH_STROKE_SYNTH_H_
#define INKASSESS_SYNTH_STROKE_SYNTH_H_

#include <cstdint>
#include <random>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"

namespace inkassess {

enum class SpeedProfile { kConstant, kMinimumJerk };
enum class PressureProfile { kConstant, kArch };

// One synthetic stroke: the pen follows `path` at `speed_mm_s` (mean speed for
// the minimum-jerk profile), displaced along the path normal by
// `tremor_amplitude_mm * sin(2 pi f t)` plus isotropic Gaussian jitter.
struct SynthSpec {
  std::vector<Point> path;
  double speed_mm_s = 60;
  SpeedProfile speed_profile = SpeedProfile::kConstant;
  double tremor_amplitude_mm = 0;
  double tremor_freq_hz = 8;
  double jitter_sigma_mm = 0;
  double pressure = 0.6;
  PressureProfile pressure_profile = PressureProfile::kConstant;
  double rate_hz = 200;
  Micros start_t = 0;
  uint64_t seed = 0;
};

// Fails with InvalidSpec for an empty or zero-length path, non-positive
// speed or rate, negative amplitude/jitter/frequency, or pressure outside
// (0, 1].
absl::Status ValidateSpec(const SynthSpec& spec);

// Samples at t_k = start + round(k * 1e6 / rate) while before the end of the
// stroke, plus one sample exactly at the end.
absl::StatusOr<std::vector<RawSample>> GenStroke(const SynthSpec& spec);

// Seeded standard normal variates (Box-Muller on a 64-bit Mersenne twister),
// so output does not depend on the standard library's distributions.
class NormalSource {
 public:
  explicit NormalSource(uint64_t seed) : engine_(seed) {}
  double Uniform();  // [0, 1)
  double Next();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// Mixes a base seed with a stream index.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Base paths. Angles are clock angles in degrees (clockwise from 12 o'clock
// on the page, y down) unless noted.
std::vector<Point> LinePath(const Point& a, const Point& b);
std::vector<Point> ArcPath(const Point& center, double radius,
                           double start_deg, double sweep_deg,
                           int segments = 360);
// Closed polygon through `vertices`, starting and ending at vertices[start].
std::vector<Point> ClosedPath(const std::vector<Point>& vertices,
                              size_t start = 0);
// Vertices of a regular n-gon; the first vertex sits at `first_vertex_deg`.
std::vector<Point> RegularPolygon(const Point& center, double radius, int n,
                                  double first_vertex_deg);
Point OnClock(const Point& center, double radius, double clock_deg);

}  // namespace inkassess

#endif  // INKASSESS_SYNTH_STROKE_SYNTH_H_
