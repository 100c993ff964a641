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

#ifndef INKASSESS_SERVICE_PIPELINE_H_
#define INKASSESS_SERVICE_PIPELINE_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/battery/scoring.h"
#include "inkassess/battery/template.h"
#include "inkassess/features/session_features.h"
#include "inkassess/ink/segment.h"
#include "inkassess/recognizer/grouping.h"
#include "inkassess/service/config.h"
#include "inkassess/service/suggestions.h"
#include "json.hpp"

namespace inkassess {

// Every threshold that influences derived output. It is written into the raw
// log so a rebuild never depends on the current configuration.
struct PipelineConfig {
  FeatureConfig features;
  ScoringConfig scoring;
  SuggestionConfig suggestions;
};

PipelineConfig ToPipelineConfig(const ServiceConfig& config);
nlohmann::ordered_json PipelineConfigToJson(const PipelineConfig& config);
absl::StatusOr<PipelineConfig> PipelineConfigFromJson(const nlohmann::json& j);

struct SessionArtifacts {
  std::string derived_json;
  std::string graph_nt;
  // The session_summary message, ready to send.
  nlohmann::ordered_json summary_message;
};

// One session's incremental analysis. Single threaded; the caller serializes
// access. Feeding the same messages always yields the same events and
// artifacts, which is what makes a raw log replayable.
class SessionPipeline {
 public:
  using Emit = std::function<void(nlohmann::ordered_json)>;

  // `start` is a start_session message body. When it carries "config" and
  // "template" (as raw log records do) those win over `defaults` and the
  // registry layout. Fails with UnknownTest, InvalidTemplate, InvalidFormat,
  // or InvalidConfig.
  static absl::StatusOr<std::unique_ptr<SessionPipeline>> Start(
      const nlohmann::json& start, const PipelineConfig& defaults);

  // The start_session record for the raw log, with config and template
  // filled in.
  const nlohmann::ordered_json& start_record() const { return start_record_; }
  const std::string& session_id() const { return session_.info.session_id; }

  // Checks a samples message without applying it: InvalidFormat for a bad
  // sample, NonMonotonicTimestamp when time goes backwards within the batch
  // or relative to earlier batches.
  absl::StatusOr<std::vector<RawSample>> CheckSamples(
      const nlohmann::json& message) const;

  // Applies a checked batch. Emits feature_update first, then any
  // stroke_completed, classification, and score_update events it caused.
  void AddSamples(const std::vector<RawSample>& samples,
                  std::optional<int64_t> seq, const Emit& emit);

  // Closes the open stroke and group, emits their events and one
  // replay_suggestion per suggestion. The session_summary message is returned
  // in the artifacts rather than emitted, so callers can persist first.
  SessionArtifacts End(const Emit& emit);

  const InkSession& session() const { return session_; }
  FeatureVector document() const { return document_.Snapshot(); }
  const std::vector<FeatureVector>& stroke_features() const {
    return stroke_features_;
  }
  bool ended() const { return ended_; }

 private:
  SessionPipeline(SessionInfo info, TestTemplate tmpl, PipelineConfig config);

  void OnOutput(StreamSegmenter::Output& out,
                std::vector<nlohmann::ordered_json>& events);
  void OnGroup(StrokeGroup group, std::vector<nlohmann::ordered_json>& events);
  void Rescore(std::vector<nlohmann::ordered_json>& events);

  PipelineConfig config_;
  TestTemplate tmpl_;
  nlohmann::ordered_json start_record_;
  InkSession session_;
  StreamSegmenter segmenter_;
  StreamGrouper grouper_;
  DocumentAccumulator document_;
  std::vector<FeatureVector> stroke_features_;
  std::vector<StrokeGroup> groups_;
  std::vector<ShapeLabel> labels_;
  std::optional<Micros> last_t_;
  std::string last_score_;
  int64_t batches_ = 0;
  bool ended_ = false;
};

nlohmann::ordered_json ShapeLabelToJson(const ShapeLabel& label);

// Runs a raw log (one JSON record per line: start_session, samples...,
// optionally end_session) through a fresh pipeline. A log without
// end_session is finalized as if it had one.
absl::StatusOr<SessionArtifacts> RebuildFromRawLog(std::string_view raw_log);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_PIPELINE_H_
