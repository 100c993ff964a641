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

#ifndef INKASSESS_FEATURES_SESSION_FEATURES_H_
#define INKASSESS_FEATURES_SESSION_FEATURES_H_

#include <optional>
#include <string>
#include <vector>

#include "inkassess/features/feature_vector.h"
#include "inkassess/ink/types.h"

namespace inkassess {

struct FeatureConfig {
  // Gaps strictly longer than this count as pauses.
  Micros pause_threshold_us = 200'000;
};

FeatureVector GapFeatures(const InAirGap& gap, std::optional<Point> prev_end,
                          std::optional<Point> next_start,
                          const FeatureConfig& config,
                          const std::string& session_id = "");

// Builds the document-level vector from strokes and gaps as they complete.
// Durations are summed in integer microseconds, so
// total_on_paper + total_in_air == session_span holds exactly.
class DocumentAccumulator {
 public:
  explicit DocumentAccumulator(FeatureConfig config = {},
                               std::string session_id = "");

  void AddStroke(const Stroke& stroke, const FeatureVector& stroke_features);
  void AddGap(const InAirGap& gap);

  FeatureVector Snapshot() const;

  Micros on_paper_us() const { return on_paper_us_; }
  Micros in_air_us() const { return in_air_us_; }
  Micros span_us() const;
  int stroke_count() const { return stroke_count_; }

 private:
  void Touch(Micros start, Micros end);

  FeatureConfig config_;
  std::string session_id_;
  std::optional<Micros> first_t_;
  std::optional<Micros> last_t_;
  Micros on_paper_us_ = 0;
  Micros in_air_us_ = 0;
  Micros max_gap_us_ = 0;
  int stroke_count_ = 0;
  int gap_count_ = 0;
  int pause_count_ = 0;
  double total_path_mm_ = 0;
  // Welford running moments per stroke feature.
  std::vector<double> mean_;
  std::vector<double> m2_;
};

struct SessionFeatureSet {
  std::vector<FeatureVector> strokes;
  std::vector<FeatureVector> gaps;
  FeatureVector document;
};

SessionFeatureSet SessionFeatures(const InkSession& session,
                                  const FeatureConfig& config = {});

}  // namespace inkassess

#endif  // INKASSESS_FEATURES_SESSION_FEATURES_H_
