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

#ifndef INKASSESS_BATTERY_SCORING_H_
#define INKASSESS_BATTERY_SCORING_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/battery/template.h"
#include "inkassess/features/feature_vector.h"
#include "inkassess/ink/types.h"
#include "inkassess/recognizer/classifier.h"
#include "inkassess/recognizer/grouping.h"
#include "json.hpp"

namespace inkassess {

// Every threshold used by the scoring rubrics.
struct ScoringConfig {
  GroupingConfig grouping;
  ClassifierConfig classifier;
  double angle_tolerance_deg = 15.0;
  double crossing_ink_mm = 2.0;
  // A hand must start within this fraction of the clock radius from the
  // center.
  double hand_center_ratio = 0.2;
  double contour_min_radius_mm = 15.0;
  // Endpoint gap, relative to the radius, below which the contour is closed.
  double contour_closure_ratio = 0.1;
  double long_pause_s = 3.0;
};

struct ClockTime {
  int hour = 0;
  int minute = 0;
};

// Parses "H:MM" or "HH:MM" (hour 0-23, minute 0-59).
std::optional<ClockTime> ParseClockTime(std::string_view text);

// Angle of `p` seen from `center`, clockwise from 12 o'clock, in [0, 360).
// Page y grows downwards.
double ClockAngleDeg(const Point& center, const Point& p);

// Smallest absolute difference between two angles, in [0, 180].
double AngleDiffDeg(double a, double b);

struct LabeledGroup {
  StrokeGroup group;
  ShapeLabel label;
};

std::vector<LabeledGroup> LabelGroups(const InkSession& session,
                                      const ScoringConfig& config = {},
                                      const TextRecognizer* text = nullptr);

struct CdtResult {
  bool contour_present = false;
  bool contour_closed = false;
  int mark_count = 0;
  bool marks_well_placed = false;
  bool hands_present = false;
  bool hands_correct = false;
  // Digit identity is not read; marks are judged by position only.
  bool marks_identity_checked = false;
  int total = 0;
  // Clock face used for the measurements (fitted contour, pre-printed face,
  // or the ink bbox when neither exists).
  Point center;
  double radius = 0;
  std::vector<int> hand_strokes;
  std::vector<double> hand_angles_deg;
  std::vector<int> mark_groups;
};

// Scores the clock drawn in the template's clock canvas (the region whose
// `expect` is a time); `target` overrides that time when given.
absl::StatusOr<CdtResult> ScoreCdt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   std::optional<ClockTime> target = {},
                                   const ScoringConfig& config = {});

struct TmtResult {
  double completion_time_s = 0;
  int sequencing_errors = 0;
  int nodes_visited = 0;
  bool completed = false;
  std::vector<int> visit_order;  // node ordinals in order of first entry
};

absl::StatusOr<TmtResult> ScoreTmt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   const ScoringConfig& config = {});

struct AktResult {
  std::vector<std::string> hits;
  std::vector<std::string> misses;
  std::vector<std::string> false_alarms;
  double duration_s = 0;
};

absl::StatusOr<AktResult> ScoreAkt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   const ScoringConfig& config = {});

struct PentagonResult {
  bool two_pentagons = false;
  bool intersect = false;
  bool intersection_is_quadrilateral = false;
  int intersection_vertices = 0;
  std::vector<int> pentagon_groups;
};

// Uses the canvas whose `expect` is "interlocking-pentagons", or the whole
// page when `canvas_id` is empty and no such canvas exists.
absl::StatusOr<PentagonResult> CheckPentagonCopy(
    const InkSession& session, const TestTemplate& tmpl,
    const ScoringConfig& config = {}, std::string_view canvas_id = "");

struct FieldResult {
  std::string region_id;
  bool has_ink = false;
  double ink_path_mm = 0;
  std::string text;
  double text_confidence = 0;
};

std::vector<FieldResult> FieldCompletion(const InkSession& session,
                                         const TestTemplate& tmpl,
                                         const TextRecognizer* text = nullptr);

struct ChecklistResult {
  std::string region_id;
  std::vector<Shape> expected;
  std::vector<Shape> found;
};

// Shape checklist canvases: `expect` lists recognizer labels.
std::vector<ChecklistResult> ShapeChecklists(
    const InkSession& session, const TestTemplate& tmpl,
    const ScoringConfig& config = {}, const TextRecognizer* text = nullptr);

struct ScoreComponent {
  std::string name;
  double value = 0;
  double min = 0;
  std::optional<double> max;  // unset when unbounded

  friend bool operator==(const ScoreComponent&, const ScoreComponent&) =
      default;
};

struct TestResult {
  std::string test_id;
  std::string session_id;
  std::vector<ScoreComponent> components;
  // Name of the component reported as the test's score.
  std::string primary;
  double completion_time_s = 0;
  std::vector<std::string> flags;

  const ScoreComponent* Find(std::string_view name) const;
};

// Runs every rubric the template calls for. Components of canvas rubrics are
// prefixed with the canvas id ("clock.total"); page-level rubrics (trail,
// cross-out, fields) are not. Fails with NoInk for a session without strokes.
absl::StatusOr<TestResult> ScoreSession(const InkSession& session,
                                        const TestTemplate& tmpl,
                                        const ScoringConfig& config = {},
                                        const TextRecognizer* text = nullptr);

struct SummativeStats {
  std::string session_id;
  std::string test_id;
  std::vector<TestResult> results;
  double completion_time_s = 0;
  FeatureVector document;
  std::vector<std::string> flags;  // sorted, unique
};

// First pen-down to last pen-up; 0 without strokes.
double CompletionTimeS(const InkSession& session);

SummativeStats Summarize(const InkSession& session,
                         std::span<const TestResult> results,
                         const ScoringConfig& config = {});

nlohmann::ordered_json TestResultToJson(const TestResult& result);
nlohmann::ordered_json SummaryToJson(const SummativeStats& stats);

}  // namespace inkassess

#endif  // INKASSESS_BATTERY_SCORING_H_
