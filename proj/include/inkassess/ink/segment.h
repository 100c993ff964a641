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

#ifndef INKASSESS_INK_SEGMENT_H_
#define INKASSESS_INK_SEGMENT_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"

namespace inkassess {

struct Segmentation {
  std::vector<Stroke> strokes;
  std::vector<InAirGap> gaps;
};

// Collapses runs of samples sharing a timestamp into their last sample.
// Fails with NonMonotonicTimestamp if time ever goes backwards.
absl::StatusOr<std::vector<RawSample>> DeduplicateSamples(
    std::span<const RawSample> samples);

// Splits a sample stream into strokes (maximal contact runs) and in-air gaps.
// Duplicate timestamps are merged first (see `DeduplicateSamples`).
absl::StatusOr<Segmentation> SegmentStrokes(std::span<const RawSample> samples);

absl::StatusOr<InkSession> BuildSession(SessionInfo info,
                                        std::span<const RawSample> samples);

// Reassembles the sample stream, in time order, from strokes and gap hover
// samples.
std::vector<RawSample> FlattenSession(const InkSession& session);

// Incremental counterpart of `SegmentStrokes`. A sample is held back until a
// later timestamp arrives, because a duplicate timestamp replaces it.
class StreamSegmenter {
 public:
  struct Output {
    std::vector<Stroke> completed_strokes;
    std::vector<InAirGap> completed_gaps;
  };

  // Feeds one sample. Completed strokes/gaps are appended to `out`.
  absl::Status Push(const RawSample& sample, Output& out);
  // Flushes the pending sample and closes the open stroke or trailing gap.
  void Finish(Output& out);

  bool pen_down() const { return !open_stroke_.samples.empty(); }
  int stroke_count() const { return next_stroke_index_; }
  const Stroke& open_stroke() const { return open_stroke_; }
  std::optional<Micros> last_t() const;

 private:
  void Commit(const RawSample& sample, Output& out);

  std::optional<RawSample> pending_;
  Stroke open_stroke_;
  InAirGap open_gap_;
  bool gap_open_ = false;
  int next_stroke_index_ = 0;
};

}  // namespace inkassess

#endif  // INKASSESS_INK_SEGMENT_H_
