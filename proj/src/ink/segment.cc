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

#include "inkassess/ink/segment.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_cat.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

absl::Status NonMonotonic(Micros previous, Micros current) {
  return MakeError(ErrorKind::kNonMonotonicTimestamp,
                   absl::StrCat("timestamp ", current, " after ", previous));
}

}  // namespace

absl::StatusOr<std::vector<RawSample>> DeduplicateSamples(
    std::span<const RawSample> samples) {
  std::vector<RawSample> out;
  out.reserve(samples.size());
  for (const RawSample& sample : samples) {
    if (!out.empty()) {
      if (sample.t < out.back().t) return NonMonotonic(out.back().t, sample.t);
      if (sample.t == out.back().t) {
        out.back() = sample;
        continue;
      }
    }
    out.push_back(sample);
  }
  return out;
}

absl::StatusOr<Segmentation> SegmentStrokes(
    std::span<const RawSample> samples) {
  INKASSESS_ASSIGN_OR_RETURN(std::vector<RawSample> clean,
                             DeduplicateSamples(samples));
  Segmentation result;
  Stroke stroke;
  InAirGap gap;
  bool gap_open = false;
  for (const RawSample& sample : clean) {
    if (sample.contact) {
      if (stroke.samples.empty()) {
        stroke.index = static_cast<int>(result.strokes.size());
        if (gap_open) {
          gap.end_t = sample.t;
          gap.next_stroke = stroke.index;
          result.gaps.push_back(std::move(gap));
          gap = InAirGap{};
          gap_open = false;
        }
      }
      stroke.samples.push_back(sample);
      continue;
    }
    if (!stroke.samples.empty()) {
      gap.start_t = stroke.EndT();
      gap.prev_stroke = stroke.index;
      result.strokes.push_back(std::move(stroke));
      stroke = Stroke{};
      gap_open = true;
    } else if (!gap_open) {
      gap.start_t = sample.t;
      gap_open = true;
    }
    gap.hover_samples.push_back(sample);
  }
  if (!stroke.samples.empty()) {
    result.strokes.push_back(std::move(stroke));
  } else if (gap_open) {
    gap.end_t = gap.hover_samples.back().t;
    result.gaps.push_back(std::move(gap));
  }
  return result;
}

absl::StatusOr<InkSession> BuildSession(SessionInfo info,
                                        std::span<const RawSample> samples) {
  INKASSESS_ASSIGN_OR_RETURN(Segmentation seg, SegmentStrokes(samples));
  InkSession session;
  session.info = std::move(info);
  session.strokes = std::move(seg.strokes);
  session.gaps = std::move(seg.gaps);
  return session;
}

std::vector<RawSample> FlattenSession(const InkSession& session) {
  std::vector<RawSample> out;
  for (const Stroke& stroke : session.strokes) {
    out.insert(out.end(), stroke.samples.begin(), stroke.samples.end());
  }
  for (const InAirGap& gap : session.gaps) {
    out.insert(out.end(), gap.hover_samples.begin(), gap.hover_samples.end());
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RawSample& a, const RawSample& b) {
                     return a.t < b.t;
                   });
  return out;
}

absl::Status StreamSegmenter::Push(const RawSample& sample, Output& out) {
  if (pending_.has_value()) {
    if (sample.t < pending_->t) return NonMonotonic(pending_->t, sample.t);
    if (sample.t > pending_->t) Commit(*pending_, out);
  }
  pending_ = sample;
  return absl::OkStatus();
}

void StreamSegmenter::Finish(Output& out) {
  if (pending_.has_value()) {
    Commit(*pending_, out);
    pending_.reset();
  }
  if (!open_stroke_.samples.empty()) {
    out.completed_strokes.push_back(std::move(open_stroke_));
    open_stroke_ = Stroke{};
  } else if (gap_open_) {
    open_gap_.end_t = open_gap_.hover_samples.back().t;
    out.completed_gaps.push_back(std::move(open_gap_));
    open_gap_ = InAirGap{};
    gap_open_ = false;
  }
}

std::optional<Micros> StreamSegmenter::last_t() const {
  if (pending_.has_value()) return pending_->t;
  return std::nullopt;
}

void StreamSegmenter::Commit(const RawSample& sample, Output& out) {
  if (sample.contact) {
    if (open_stroke_.samples.empty()) {
      open_stroke_.index = next_stroke_index_++;
      if (gap_open_) {
        open_gap_.end_t = sample.t;
        open_gap_.next_stroke = open_stroke_.index;
        out.completed_gaps.push_back(std::move(open_gap_));
        open_gap_ = InAirGap{};
        gap_open_ = false;
      }
    }
    open_stroke_.samples.push_back(sample);
    return;
  }
  if (!open_stroke_.samples.empty()) {
    open_gap_.start_t = open_stroke_.EndT();
    open_gap_.prev_stroke = open_stroke_.index;
    out.completed_strokes.push_back(std::move(open_stroke_));
    open_stroke_ = Stroke{};
    gap_open_ = true;
  } else if (!gap_open_) {
    open_gap_.start_t = sample.t;
    gap_open_ = true;
  }
  open_gap_.hover_samples.push_back(sample);
}

}  // namespace inkassess
