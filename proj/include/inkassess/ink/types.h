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

#ifndef INKASSESS_INK_TYPES_H_
#define INKASSESS_INK_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace inkassess {

// Microseconds since session start.
using Micros = int64_t;

inline constexpr double kMicrosPerSecond = 1e6;

inline double ToSeconds(Micros us) {
  return static_cast<double>(us) / kMicrosPerSecond;
}

// One pen report. Coordinates are page millimeters with y growing downwards
// (paper convention); pressure is normalized to [0, 1] and is 0 whenever the
// pen is not touching the surface.
struct RawSample {
  Micros t = 0;
  double x = 0;
  double y = 0;
  double pressure = 0;
  bool contact = false;

  friend bool operator==(const RawSample&, const RawSample&) = default;
};

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// A position along a resampled path, with its interpolated timestamp.
struct TimedPoint {
  double x = 0;
  double y = 0;
  double t = 0;  // microseconds, fractional after interpolation
};

struct BBox {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;

  double Width() const { return max_x - min_x; }
  double Height() const { return max_y - min_y; }
  double Diagonal() const;
  Point Center() const { return {(min_x + max_x) / 2, (min_y + max_y) / 2}; }
  bool Contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  void Extend(double x, double y);
  void Extend(const BBox& other);

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Euclidean distance between two boxes; 0 when they touch or overlap.
double BoxGap(const BBox& a, const BBox& b);

// Maximal pen-down run. Samples all have contact=true and strictly increasing
// timestamps.
struct Stroke {
  int index = 0;
  std::vector<RawSample> samples;

  Micros StartT() const { return samples.front().t; }
  Micros EndT() const { return samples.back().t; }
  Micros DurationUs() const { return EndT() - StartT(); }
};

// Pen-up interval. Interior gaps run from the previous stroke's last sample
// to the next stroke's first sample. Leading/trailing gaps exist only when
// hover samples precede the first or follow the last stroke.
struct InAirGap {
  Micros start_t = 0;
  Micros end_t = 0;
  std::vector<RawSample> hover_samples;
  std::optional<int> prev_stroke;
  std::optional<int> next_stroke;

  Micros DurationUs() const { return end_t - start_t; }
  bool IsInterior() const {
    return prev_stroke.has_value() && next_stroke.has_value();
  }
};

enum class InputSource { kDigitalPaper, kTabletStylus };

std::string_view InputSourceName(InputSource source);
std::optional<InputSource> ParseInputSource(std::string_view name);

struct PageSize {
  double w_mm = 210;
  double h_mm = 297;

  friend bool operator==(const PageSize&, const PageSize&) = default;
};

// Session metadata. `subject_pseudonym` is caller supplied and opaque; no
// personal data is modelled.
struct SessionInfo {
  std::string session_id;
  std::string test_id;
  std::string subject_pseudonym;
  PageSize page;
  InputSource source = InputSource::kDigitalPaper;

  friend bool operator==(const SessionInfo&, const SessionInfo&) = default;
};

struct InkSession {
  SessionInfo info;
  std::vector<Stroke> strokes;
  std::vector<InAirGap> gaps;

  bool Empty() const { return strokes.empty() && gaps.empty(); }
  // First and last timestamps over strokes and gaps; 0 for an empty session.
  Micros FirstT() const;
  Micros LastT() const;
  Micros SpanUs() const { return LastT() - FirstT(); }
};

}  // namespace inkassess

#endif  // INKASSESS_INK_TYPES_H_
