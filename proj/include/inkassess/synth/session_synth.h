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

#ifndef INKASSESS_SYNTH_SESSION_SYNTH_H_
#define INKASSESS_SYNTH_SESSION_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/battery/template.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/recognizer/classifier.h"
#include "inkassess/synth/stroke_synth.h"
#include "json.hpp"

namespace inkassess {

// Drawing style and perturbations shared by all strokes of a session.
struct SynthStyle {
  double speed_mm_s = 70;
  SpeedProfile speed_profile = SpeedProfile::kConstant;
  double tremor_amplitude_mm = 0;
  double tremor_freq_hz = 8;
  double jitter_sigma_mm = 0;
  double rate_hz = 200;
  PressureProfile pressure_profile = PressureProfile::kConstant;
};

struct SynthParams {
  SynthStyle style;
  std::string session_id = "synth";
  std::string subject_pseudonym = "synthetic";
  InputSource source = InputSource::kDigitalPaper;

  // Clock tests.
  std::string target_time = "11:10";
  bool draw_hands = true;
  bool preprinted_contour = false;
  // Trail making.
  int trail_nodes = 25;
  int trail_errors = 0;
  // Cross-out: region ids to cross. Unset targets means all targets (or a
  // seeded random subset with `random_subsets`).
  std::optional<std::vector<std::string>> akt_targets;
  std::vector<std::string> akt_distractors;
  // Input fields to fill; unset means all (or a random subset).
  std::optional<std::vector<std::string>> fields;
  bool random_subsets = false;
  // Pentagon copy: "interlocking", "disjoint" or "single".
  std::string pentagon_layout = "interlocking";

  // Injected events. A long pause is inserted before the first stroke of
  // group `long_pause_before_group`; a correction re-traces the first stroke
  // of group `correction_group` after the drawing is otherwise done.
  double long_pause_s = 0;
  int long_pause_before_group = 1;
  bool correction = false;
  int correction_group = 0;
};

struct StrokeTruth {
  int stroke = 0;
  int group = 0;
  double tremor_amplitude_mm = 0;
  double tremor_freq_hz = 0;
  double speed_mm_s = 0;
};

struct PauseTruth {
  int before_stroke = 0;
  double duration_s = 0;
};

struct CorrectionTruth {
  int stroke = 0;
  int original_stroke = 0;
};

struct SynthManifest {
  uint64_t seed = 0;
  std::string test_id;
  std::string session_id;
  int group_count = 0;
  // Expected recognizer label per ground-truth group; empty when the group
  // is not meant to match a particular label (e.g. digit glyphs).
  std::vector<std::string> group_labels;
  std::vector<StrokeTruth> strokes;
  std::vector<PauseTruth> long_pauses;
  std::vector<CorrectionTruth> corrections;
  std::vector<int> trail_skipped;
  int trail_errors = 0;
  std::vector<std::string> akt_crossed_targets;
  std::vector<std::string> akt_crossed_distractors;
  std::vector<std::string> fields_filled;
  // Expected score components for zero-noise generations, keyed by
  // component name.
  nlohmann::ordered_json expected = nlohmann::ordered_json::object();
};

nlohmann::ordered_json ManifestToJson(const SynthManifest& manifest);

struct SynthSession {
  InkDocument document;
  SynthManifest manifest;
  TestTemplate tmpl;
};

// Full synthetic session for a registry test drawn on its default layout.
// Fails with UnknownTest or InvalidSpec.
absl::StatusOr<SynthSession> GenTestSession(std::string_view test_id,
                                            const SynthParams& params,
                                            uint64_t seed);

// A single recognizer shape with seeded random size and orientation.
absl::StatusOr<SynthSession> GenShapeSession(Shape shape,
                                             const SynthParams& params,
                                             uint64_t seed);

}  // namespace inkassess

#endif  // INKASSESS_SYNTH_SESSION_SYNTH_H_
