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

#ifndef INKASSESS_RECOGNIZER_GROUPING_H_
#define INKASSESS_RECOGNIZER_GROUPING_H_

#include <optional>
#include <vector>

#include "inkassess/ink/types.h"

namespace inkassess {

struct GroupingConfig {
  double gap_mm = 5.0;
  double gap_s = 1.0;
};

// A run of consecutive strokes treated as one drawn symbol. Ids start at 1 and
// follow drawing order.
struct StrokeGroup {
  int id = 0;
  std::vector<int> strokes;
  BBox bbox;

  friend bool operator==(const StrokeGroup&, const StrokeGroup&) = default;
};

// Incremental grouping. A stroke joins the open group when its bbox lies
// within `gap_mm` of the group's bbox and it starts no later than `gap_s`
// after the previous stroke ended; otherwise the open group is closed.
class StreamGrouper {
 public:
  explicit StreamGrouper(GroupingConfig config = {});

  // Returns the group closed by this stroke, if any.
  std::optional<StrokeGroup> AddStroke(const Stroke& stroke);

  // Closes the open group if no stroke starting at or after
  // `earliest_next_start` could still join it.
  std::optional<StrokeGroup> AdvanceTime(Micros earliest_next_start);

  std::optional<StrokeGroup> Finish();

  const std::optional<StrokeGroup>& open_group() const { return open_; }

 private:
  std::optional<StrokeGroup> Close();

  GroupingConfig config_;
  Micros gap_us_;
  std::optional<StrokeGroup> open_;
  Micros open_end_t_ = 0;
  int next_id_ = 1;
};

std::vector<StrokeGroup> GroupStrokes(const InkSession& session,
                                      const GroupingConfig& config = {});

// Looks up the strokes of `group` in `session`.
std::vector<const Stroke*> GroupStrokesOf(const StrokeGroup& group,
                                          const InkSession& session);

}  // namespace inkassess

#endif  // INKASSESS_RECOGNIZER_GROUPING_H_
