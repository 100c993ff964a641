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

#include "inkassess/recognizer/grouping.h"

#include <cmath>

#include "inkassess/ink/geometry.h"

namespace inkassess {

StreamGrouper::StreamGrouper(GroupingConfig config)
    : config_(config),
      gap_us_(static_cast<Micros>(std::llround(config.gap_s * 1e6))) {}

std::optional<StrokeGroup> StreamGrouper::Close() {
  std::optional<StrokeGroup> closed = std::move(open_);
  open_.reset();
  return closed;
}

std::optional<StrokeGroup> StreamGrouper::AddStroke(const Stroke& stroke) {
  BBox box = BBoxOf(stroke.samples);
  std::optional<StrokeGroup> closed;
  if (open_.has_value()) {
    bool near = BoxGap(open_->bbox, box) <= config_.gap_mm;
    bool soon = stroke.StartT() - open_end_t_ <= gap_us_;
    if (near && soon) {
      open_->strokes.push_back(stroke.index);
      open_->bbox.Extend(box);
      open_end_t_ = stroke.EndT();
      return std::nullopt;
    }
    closed = Close();
  }
  open_ = StrokeGroup{next_id_++, {stroke.index}, box};
  open_end_t_ = stroke.EndT();
  return closed;
}

std::optional<StrokeGroup> StreamGrouper::AdvanceTime(
    Micros earliest_next_start) {
  if (open_.has_value() && earliest_next_start - open_end_t_ > gap_us_) {
    return Close();
  }
  return std::nullopt;
}

std::optional<StrokeGroup> StreamGrouper::Finish() { return Close(); }

std::vector<StrokeGroup> GroupStrokes(const InkSession& session,
                                      const GroupingConfig& config) {
  std::vector<StrokeGroup> groups;
  StreamGrouper grouper(config);
  for (const Stroke& stroke : session.strokes) {
    if (auto closed = grouper.AddStroke(stroke)) groups.push_back(*closed);
  }
  if (auto closed = grouper.Finish()) groups.push_back(*closed);
  return groups;
}

std::vector<const Stroke*> GroupStrokesOf(const StrokeGroup& group,
                                          const InkSession& session) {
  std::vector<const Stroke*> out;
  for (int index : group.strokes) {
    if (index >= 0 && static_cast<size_t>(index) < session.strokes.size()) {
      out.push_back(&session.strokes[static_cast<size_t>(index)]);
    }
  }
  return out;
}

}  // namespace inkassess
