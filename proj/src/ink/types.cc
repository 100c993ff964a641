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

#include "inkassess/ink/types.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace inkassess {

double BBox::Diagonal() const { return std::hypot(Width(), Height()); }

void BBox::Extend(double x, double y) {
  min_x = std::min(min_x, x);
  min_y = std::min(min_y, y);
  max_x = std::max(max_x, x);
  max_y = std::max(max_y, y);
}

void BBox::Extend(const BBox& other) {
  Extend(other.min_x, other.min_y);
  Extend(other.max_x, other.max_y);
}

double BoxGap(const BBox& a, const BBox& b) {
  double dx = std::max({0.0, a.min_x - b.max_x, b.min_x - a.max_x});
  double dy = std::max({0.0, a.min_y - b.max_y, b.min_y - a.max_y});
  return std::hypot(dx, dy);
}

std::string_view InputSourceName(InputSource source) {
  switch (source) {
    case InputSource::kDigitalPaper:
      return "digital-paper";
    case InputSource::kTabletStylus:
      return "tablet-stylus";
  }
  return "digital-paper";
}

std::optional<InputSource> ParseInputSource(std::string_view name) {
  if (name == "digital-paper") return InputSource::kDigitalPaper;
  if (name == "tablet-stylus") return InputSource::kTabletStylus;
  return std::nullopt;
}

Micros InkSession::FirstT() const {
  Micros first = std::numeric_limits<Micros>::max();
  if (!strokes.empty()) first = std::min(first, strokes.front().StartT());
  if (!gaps.empty()) first = std::min(first, gaps.front().start_t);
  return first == std::numeric_limits<Micros>::max() ? 0 : first;
}

Micros InkSession::LastT() const {
  Micros last = std::numeric_limits<Micros>::min();
  if (!strokes.empty()) last = std::max(last, strokes.back().EndT());
  if (!gaps.empty()) last = std::max(last, gaps.back().end_t);
  return last == std::numeric_limits<Micros>::min() ? 0 : last;
}

}  // namespace inkassess
