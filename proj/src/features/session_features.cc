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

#include "inkassess/features/session_features.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/features/stroke_features.h"

namespace inkassess {

FeatureVector GapFeatures(const InAirGap& gap, std::optional<Point> prev_end,
                          std::optional<Point> next_start,
                          const FeatureConfig& config,
                          const std::string& session_id) {
  FeatureVector f(FeatureScope{session_id, FeatureLevel::kGap, 0});
  double duration_s = ToSeconds(gap.DurationUs());
  f.Set("gap_duration_s", duration_s);
  f.Set("is_pause", gap.DurationUs() > config.pause_threshold_us ? 1.0 : 0.0);
  f.Set("hover_sample_count", static_cast<double>(gap.hover_samples.size()));
  if (prev_end.has_value() && next_start.has_value()) {
    double jump = Distance(*prev_end, *next_start);
    f.Set("gap_jump_mm", jump);
    if (duration_s > 0) f.Set("in_air_speed_mm_s", jump / duration_s);
  }
  return f;
}

DocumentAccumulator::DocumentAccumulator(FeatureConfig config,
                                         std::string session_id)
    : config_(config),
      session_id_(std::move(session_id)),
      mean_(FeatureIds(FeatureLevel::kStroke).size(), 0.0),
      m2_(FeatureIds(FeatureLevel::kStroke).size(), 0.0) {}

void DocumentAccumulator::Touch(Micros start, Micros end) {
  first_t_ = first_t_.has_value() ? std::min(*first_t_, start) : start;
  last_t_ = last_t_.has_value() ? std::max(*last_t_, end) : end;
}

Micros DocumentAccumulator::span_us() const {
  return first_t_.has_value() ? *last_t_ - *first_t_ : 0;
}

void DocumentAccumulator::AddStroke(const Stroke& stroke,
                                    const FeatureVector& stroke_features) {
  Touch(stroke.StartT(), stroke.EndT());
  on_paper_us_ += stroke.DurationUs();
  total_path_mm_ += stroke_features.Get("path_length_mm");
  ++stroke_count_;
  const double n = stroke_count_;
  for (size_t i = 0; i < mean_.size(); ++i) {
    double x = stroke_features.at(i);
    double delta = x - mean_[i];
    mean_[i] += delta / n;
    m2_[i] += delta * (x - mean_[i]);
  }
}

void DocumentAccumulator::AddGap(const InAirGap& gap) {
  Touch(gap.start_t, gap.end_t);
  in_air_us_ += gap.DurationUs();
  max_gap_us_ = std::max(max_gap_us_, gap.DurationUs());
  ++gap_count_;
  if (gap.DurationUs() > config_.pause_threshold_us) ++pause_count_;
}

FeatureVector DocumentAccumulator::Snapshot() const {
  FeatureVector f(FeatureScope{session_id_, FeatureLevel::kDocument, 0});
  double span_s = ToSeconds(span_us());
  f.Set("session_span_s", span_s);
  f.Set("total_on_paper_s", ToSeconds(on_paper_us_));
  f.Set("total_in_air_s", ToSeconds(in_air_us_));
  if (span_us() > 0) {
    f.Set("in_air_ratio",
          static_cast<double>(in_air_us_) / static_cast<double>(span_us()));
    f.Set("stroke_rate_per_min", stroke_count_ / (span_s / 60.0));
  }
  f.Set("stroke_count", stroke_count_);
  f.Set("gap_count", gap_count_);
  f.Set("pause_count", pause_count_);
  f.Set("total_path_mm", total_path_mm_);
  if (gap_count_ > 0) {
    f.Set("mean_gap_s", ToSeconds(in_air_us_) / gap_count_);
  }
  f.Set("max_gap_s", ToSeconds(max_gap_us_));
  const std::vector<std::string>& ids = FeatureIds(FeatureLevel::kStroke);
  for (size_t i = 0; i < ids.size(); ++i) {
    double variance =
        stroke_count_ > 0 ? m2_[i] / static_cast<double>(stroke_count_) : 0.0;
    f.Set(absl::StrCat("mean_", ids[i]), mean_[i]);
    f.Set(absl::StrCat("std_", ids[i]), std::sqrt(std::max(0.0, variance)));
  }
  return f;
}

SessionFeatureSet SessionFeatures(const InkSession& session,
                                  const FeatureConfig& config) {
  SessionFeatureSet out;
  const std::string& sid = session.info.session_id;
  DocumentAccumulator doc(config, sid);
  for (const Stroke& stroke : session.strokes) {
    out.strokes.push_back(StrokeFeatures(stroke, sid));
    doc.AddStroke(stroke, out.strokes.back());
  }
  for (size_t i = 0; i < session.gaps.size(); ++i) {
    const InAirGap& gap = session.gaps[i];
    std::optional<Point> prev_end;
    std::optional<Point> next_start;
    if (gap.prev_stroke.has_value()) {
      prev_end = PointOf(session.strokes[*gap.prev_stroke].samples.back());
    }
    if (gap.next_stroke.has_value()) {
      next_start = PointOf(session.strokes[*gap.next_stroke].samples.front());
    }
    out.gaps.push_back(GapFeatures(gap, prev_end, next_start, config, sid));
    out.gaps.back().mutable_scope().index = static_cast<int>(i);
    doc.AddGap(gap);
  }
  out.document = doc.Snapshot();
  return out;
}

}  // namespace inkassess
