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

#ifndef INKASSESS_SERVICE_SUGGESTIONS_H_
#define INKASSESS_SERVICE_SUGGESTIONS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkassess/features/feature_vector.h"
#include "inkassess/ink/types.h"
#include "json.hpp"

namespace inkassess {

enum class SuggestionReason { kLongPause, kCorrection, kHighTremor };

std::string_view SuggestionReasonName(SuggestionReason reason);
std::optional<SuggestionReason> ParseSuggestionReason(std::string_view name);

// An interval worth reviewing in slow motion.
struct ReplaySuggestion {
  Micros start_t = 0;
  Micros end_t = 0;
  SuggestionReason reason = SuggestionReason::kLongPause;
  std::map<std::string, double> evidence;
};

struct SuggestionConfig {
  // Interior in-air gaps strictly longer than this.
  double long_pause_s = 3.0;
  // A stroke is a correction when at least `correction_overlap` of its path
  // (sampled every 0.5 mm) lies within `correction_tolerance_mm` of one
  // earlier stroke that ended at least `correction_min_age_s` before it
  // started.
  double correction_min_age_s = 2.0;
  double correction_overlap = 0.3;
  double correction_tolerance_mm = 1.0;
  // Strokes whose tremor_index_mm exceeds this percentile of the session
  // (linear interpolation between order statistics) and is at least the
  // floor.
  double high_tremor_percentile = 95.0;
  double high_tremor_floor_mm = 0.1;
};

// `stroke_features[i]` belongs to `session.strokes[i]`. Sorted by start time,
// then reason, then end time.
std::vector<ReplaySuggestion> SuggestReplays(
    const InkSession& session, std::span<const FeatureVector> stroke_features,
    const SuggestionConfig& config = {});

// Linear-interpolation percentile (p in [0, 100]); 0 for no values.
double Percentile(std::vector<double> values, double p);

nlohmann::ordered_json SuggestionToJson(const ReplaySuggestion& s);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_SUGGESTIONS_H_
