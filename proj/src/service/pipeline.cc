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

#include "inkassess/service/pipeline.h"

#include <cmath>
#include <utility>
#include <variant>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "inkassess/battery/layouts.h"
#include "inkassess/features/export.h"
#include "inkassess/features/stroke_features.h"
#include "inkassess/graph/interpret.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/service/protocol.h"
#include "inkassess/status.h"
#include "inkassess/version.h"

namespace inkassess {
namespace {

using ojson = nlohmann::ordered_json;
using Slot = std::variant<double*, int*, int64_t*>;

// Flat, dotted view of every PipelineConfig field. The same table drives
// serialization and parsing.
std::vector<std::pair<const char*, Slot>> Slots(PipelineConfig& c) {
  ScoringConfig& s = c.scoring;
  ClassifierConfig& k = s.classifier;
  SuggestionConfig& g = c.suggestions;
  return {
      {"features.pause_threshold_us", &c.features.pause_threshold_us},
      {"grouping.gap_mm", &s.grouping.gap_mm},
      {"grouping.gap_s", &s.grouping.gap_s},
      {"classifier.dot_diagonal_mm", &k.dot_diagonal_mm},
      {"classifier.line_spread_ratio", &k.line_spread_ratio},
      {"classifier.closure_ratio", &k.closure_ratio},
      {"classifier.circle_residual_ratio", &k.circle_residual_ratio},
      {"classifier.circle_max_corners", &k.circle_max_corners},
      {"classifier.axis_tolerance_deg", &k.axis_tolerance_deg},
      {"corners.spacing_mm", &k.corners.spacing_mm},
      {"corners.window_mm", &k.corners.window_mm},
      {"corners.min_angle_deg", &k.corners.min_angle_deg},
      {"corners.merge_mm", &k.corners.merge_mm},
      {"corners.closure_ratio", &k.corners.closure_ratio},
      {"scoring.angle_tolerance_deg", &s.angle_tolerance_deg},
      {"scoring.crossing_ink_mm", &s.crossing_ink_mm},
      {"scoring.hand_center_ratio", &s.hand_center_ratio},
      {"scoring.contour_min_radius_mm", &s.contour_min_radius_mm},
      {"scoring.contour_closure_ratio", &s.contour_closure_ratio},
      {"scoring.long_pause_s", &s.long_pause_s},
      {"suggestions.long_pause_s", &g.long_pause_s},
      {"suggestions.correction_min_age_s", &g.correction_min_age_s},
      {"suggestions.correction_overlap", &g.correction_overlap},
      {"suggestions.correction_tolerance_mm", &g.correction_tolerance_mm},
      {"suggestions.high_tremor_percentile", &g.high_tremor_percentile},
      {"suggestions.high_tremor_floor_mm", &g.high_tremor_floor_mm},
  };
}

absl::Status BadStart(std::string_view message) {
  return MakeError(ErrorKind::kInvalidFormat, message);
}

absl::StatusOr<SessionInfo> InfoFromStart(const nlohmann::json& start) {
  SessionInfo info;
  auto str = [&](const char* key, std::string& out) -> absl::Status {
    auto it = start.find(key);
    if (it == start.end()) return absl::OkStatus();
    if (!it->is_string()) return BadStart(absl::StrCat(key, " must be a string"));
    out = it->get<std::string>();
    return absl::OkStatus();
  };
  INKASSESS_RETURN_IF_ERROR(str("session_id", info.session_id));
  INKASSESS_RETURN_IF_ERROR(str("test_id", info.test_id));
  INKASSESS_RETURN_IF_ERROR(str("subject_pseudonym", info.subject_pseudonym));
  if (info.test_id.empty()) return BadStart("start_session without test_id");
  if (auto page = start.find("page"); page != start.end()) {
    if (!page->is_object() || !page->contains("w_mm") ||
        !page->contains("h_mm") || !(*page)["w_mm"].is_number() ||
        !(*page)["h_mm"].is_number()) {
      return BadStart("page must be {w_mm, h_mm}");
    }
    info.page = {(*page)["w_mm"].get<double>(), (*page)["h_mm"].get<double>()};
    if (!(info.page.w_mm > 0) || !(info.page.h_mm > 0)) {
      return BadStart("page dimensions must be positive");
    }
  }
  std::string source = "digital-paper";
  INKASSESS_RETURN_IF_ERROR(str("source", source));
  std::optional<InputSource> parsed = ParseInputSource(source);
  if (!parsed.has_value()) {
    return BadStart(absl::StrCat("unknown source '", source, "'"));
  }
  info.source = *parsed;
  return info;
}

ojson BBoxJson(const BBox& b) {
  return ojson::array({b.min_x, b.min_y, b.max_x, b.max_y});
}

}  // namespace

PipelineConfig ToPipelineConfig(const ServiceConfig& c) {
  PipelineConfig p;
  p.features.pause_threshold_us =
      static_cast<Micros>(std::llround(c.pause_threshold_s * 1e6));
  p.scoring.grouping.gap_mm = c.group_gap_mm;
  p.scoring.grouping.gap_s = c.group_gap_s;
  p.scoring.angle_tolerance_deg = c.angle_tolerance_deg;
  p.scoring.crossing_ink_mm = c.crossing_ink_mm;
  p.scoring.long_pause_s = c.long_pause_s;
  p.suggestions.long_pause_s = c.long_pause_s;
  p.suggestions.correction_min_age_s = c.correction_min_age_s;
  p.suggestions.correction_overlap = c.correction_overlap;
  p.suggestions.correction_tolerance_mm = c.correction_tolerance_mm;
  p.suggestions.high_tremor_percentile = c.high_tremor_percentile;
  p.suggestions.high_tremor_floor_mm = c.high_tremor_floor_mm;
  return p;
}

ojson PipelineConfigToJson(const PipelineConfig& config) {
  PipelineConfig copy = config;
  ojson j = ojson::object();
  for (const auto& [name, slot] : Slots(copy)) {
    std::visit([&, n = name](auto* p) { j[n] = *p; }, slot);
  }
  return j;
}

absl::StatusOr<PipelineConfig> PipelineConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, "config must be an object");
  }
  PipelineConfig config;
  auto slots = Slots(config);
  if (j.size() != slots.size()) {
    return MakeError(ErrorKind::kInvalidConfig,
                     absl::StrCat("expected ", slots.size(), " config keys, got ",
                                  j.size()));
  }
  for (const auto& [name, slot] : slots) {
    auto it = j.find(name);
    if (it == j.end()) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("missing config key ", name));
    }
    bool integral = !std::holds_alternative<double*>(slot);
    if (!it->is_number() || (integral && !it->is_number_integer())) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("bad value for ", name));
    }
    std::visit(
        [&](auto* p) { *p = it->get<std::remove_pointer_t<decltype(p)>>(); },
        slot);
  }
  return config;
}

nlohmann::ordered_json ShapeLabelToJson(const ShapeLabel& label) {
  ojson evidence = ojson::object();
  for (const auto& [k, v] : label.evidence) evidence[k] = v;
  ojson j = {{"label", std::string(ShapeName(label.label))},
             {"confidence", label.confidence},
             {"evidence", std::move(evidence)}};
  if (!label.text.empty()) j["text"] = label.text;
  return j;
}

SessionPipeline::SessionPipeline(SessionInfo info, TestTemplate tmpl,
                                 PipelineConfig config)
    : config_(std::move(config)),
      tmpl_(std::move(tmpl)),
      grouper_(config_.scoring.grouping),
      document_(config_.features, info.session_id) {
  session_.info = std::move(info);
}

absl::StatusOr<std::unique_ptr<SessionPipeline>> SessionPipeline::Start(
    const nlohmann::json& start, const PipelineConfig& defaults) {
  INKASSESS_ASSIGN_OR_RETURN(SessionInfo info, InfoFromStart(start));
  PipelineConfig config = defaults;
  if (auto c = start.find("config"); c != start.end()) {
    INKASSESS_ASSIGN_OR_RETURN(config, PipelineConfigFromJson(*c));
  }
  TestTemplate tmpl;
  if (auto t = start.find("template"); t != start.end()) {
    INKASSESS_ASSIGN_OR_RETURN(tmpl, TemplateFromJson(*t));
  } else {
    INKASSESS_ASSIGN_OR_RETURN(tmpl, DefaultTemplate(info.test_id));
  }
  auto pipeline = std::unique_ptr<SessionPipeline>(
      new SessionPipeline(info, std::move(tmpl), std::move(config)));
  ojson& r = pipeline->start_record_;
  r = NewMessage(MessageType::kStartSession, info.session_id);
  r["test_id"] = info.test_id;
  r["subject_pseudonym"] = info.subject_pseudonym;
  r["page"] = {{"w_mm", info.page.w_mm}, {"h_mm", info.page.h_mm}};
  r["source"] = std::string(InputSourceName(info.source));
  r["template"] = TemplateToJson(pipeline->tmpl_);
  r["config"] = PipelineConfigToJson(pipeline->config_);
  return pipeline;
}

absl::StatusOr<std::vector<RawSample>> SessionPipeline::CheckSamples(
    const nlohmann::json& message) const {
  auto arr = message.find("samples");
  if (arr == message.end() || !arr->is_array()) {
    return MakeError(ErrorKind::kInvalidFormat, "samples without array");
  }
  std::vector<RawSample> out;
  out.reserve(arr->size());
  std::optional<Micros> prev = last_t_;
  for (const nlohmann::json& s : *arr) {
    INKASSESS_ASSIGN_OR_RETURN(RawSample sample, SampleFromJson(s));
    if (prev.has_value() && sample.t < *prev) {
      return MakeError(ErrorKind::kNonMonotonicTimestamp,
                       absl::StrCat("t=", sample.t, " after t=", *prev));
    }
    prev = sample.t;
    out.push_back(sample);
  }
  return out;
}

void SessionPipeline::OnGroup(StrokeGroup group, std::vector<ojson>& events) {
  ShapeLabel label =
      ClassifyGroup(group, session_, config_.scoring.classifier, nullptr);
  ojson e = NewMessage(MessageType::kClassification, session_id());
  e["group"] = group.id;
  e["strokes"] = group.strokes;
  e["bbox"] = BBoxJson(group.bbox);
  ojson label_json = ShapeLabelToJson(label);
  for (auto& [k, v] : label_json.items()) e[k] = v;
  events.push_back(std::move(e));
  groups_.push_back(std::move(group));
  labels_.push_back(std::move(label));
  Rescore(events);
}

void SessionPipeline::Rescore(std::vector<ojson>& events) {
  absl::StatusOr<TestResult> result =
      ScoreSession(session_, tmpl_, config_.scoring);
  if (!result.ok()) return;
  ojson j = TestResultToJson(*result);
  std::string text = j.dump();
  if (text == last_score_) return;
  last_score_ = std::move(text);
  ojson e = NewMessage(MessageType::kScoreUpdate, session_id());
  e["result"] = std::move(j);
  events.push_back(std::move(e));
}

void SessionPipeline::OnOutput(StreamSegmenter::Output& out,
                               std::vector<ojson>& events) {
  for (InAirGap& gap : out.completed_gaps) {
    document_.AddGap(gap);
    session_.gaps.push_back(std::move(gap));
  }
  for (Stroke& stroke : out.completed_strokes) {
    FeatureVector f = StrokeFeatures(stroke, session_id());
    document_.AddStroke(stroke, f);
    ojson e = NewMessage(MessageType::kStrokeCompleted, session_id());
    e["stroke"] = stroke.index;
    e["start_t"] = stroke.StartT();
    e["end_t"] = stroke.EndT();
    e["bbox"] = BBoxJson(BBoxOf(stroke.samples));
    e["features"] = FeatureVectorToJson(f)["values"];
    e["document"] = FeatureVectorToJson(document_.Snapshot())["values"];
    events.push_back(std::move(e));
    stroke_features_.push_back(std::move(f));
    session_.strokes.push_back(std::move(stroke));
    if (std::optional<StrokeGroup> g =
            grouper_.AddStroke(session_.strokes.back())) {
      OnGroup(std::move(*g), events);
    }
  }
  out.completed_gaps.clear();
  out.completed_strokes.clear();
}

void SessionPipeline::AddSamples(const std::vector<RawSample>& samples,
                                 std::optional<int64_t> seq, const Emit& emit) {
  ++batches_;
  std::vector<ojson> events;
  StreamSegmenter::Output out;
  for (const RawSample& s : samples) {
    // Checked by CheckSamples, so this cannot fail.
    (void)segmenter_.Push(s, out);
    last_t_ = s.t;
    OnOutput(out, events);
  }
  if (last_t_.has_value()) {
    Micros earliest = segmenter_.pen_down()
                          ? segmenter_.open_stroke().StartT()
                          : *last_t_;
    if (std::optional<StrokeGroup> g = grouper_.AdvanceTime(earliest)) {
      OnGroup(std::move(*g), events);
    }
  }

  ojson update = NewMessage(MessageType::kFeatureUpdate, session_id());
  update["seq"] = seq.value_or(batches_);
  update["samples"] = samples.size();
  if (last_t_.has_value()) update["t"] = *last_t_;
  update["pen_down"] = segmenter_.pen_down();
  update["stroke_count"] = session_.strokes.size();
  const Stroke& open = segmenter_.open_stroke();
  if (!open.samples.empty()) {
    update["open_stroke"] = {
        {"sample_count", open.samples.size()},
        {"duration_s", ToSeconds(open.DurationUs())},
        {"path_length_mm", PathLength(open.samples)}};
  }
  update["in_air_s"] = ToSeconds(document_.in_air_us());
  update["on_paper_s"] = ToSeconds(document_.on_paper_us());
  emit(std::move(update));
  for (ojson& e : events) emit(std::move(e));
}

SessionArtifacts SessionPipeline::End(const Emit& emit) {
  ended_ = true;
  std::vector<ojson> events;
  StreamSegmenter::Output out;
  segmenter_.Finish(out);
  OnOutput(out, events);
  if (std::optional<StrokeGroup> g = grouper_.Finish()) {
    OnGroup(std::move(*g), events);
  }

  std::vector<TestResult> results;
  if (absl::StatusOr<TestResult> r =
          ScoreSession(session_, tmpl_, config_.scoring);
      r.ok()) {
    results.push_back(*std::move(r));
  }
  SummativeStats stats = Summarize(session_, results, config_.scoring);
  std::vector<ReplaySuggestion> suggestions =
      SuggestReplays(session_, stroke_features_, config_.suggestions);
  ojson suggestions_json = ojson::array();
  for (const ReplaySuggestion& s : suggestions) {
    suggestions_json.push_back(SuggestionToJson(s));
    ojson e = NewMessage(MessageType::kReplaySuggestion, session_id());
    ojson sj = SuggestionToJson(s);
    for (auto& [k, v] : sj.items()) e[k] = v;
    events.push_back(std::move(e));
  }
  for (ojson& e : events) emit(std::move(e));

  SessionArtifacts artifacts;
  ojson summary = SummaryToJson(stats);
  artifacts.summary_message =
      NewMessage(MessageType::kSessionSummary, session_id());
  artifacts.summary_message["summary"] = summary;
  artifacts.summary_message["suggestions"] = suggestions_json;

  ojson derived = {{"format", "derived-json"},
                   {"version", 1},
                   {"engine_version", kEngineVersion},
                   {"session_id", session_id()},
                   {"test_id", session_.info.test_id}};
  ojson strokes = ojson::array();
  for (size_t i = 0; i < session_.strokes.size(); ++i) {
    const Stroke& s = session_.strokes[i];
    strokes.push_back({{"index", s.index},
                       {"start_t", s.StartT()},
                       {"end_t", s.EndT()},
                       {"features", FeatureVectorToJson(stroke_features_[i])["values"]}});
  }
  derived["strokes"] = std::move(strokes);
  SessionFeatureSet batch = SessionFeatures(session_, config_.features);
  ojson gaps = ojson::array();
  for (size_t i = 0; i < session_.gaps.size(); ++i) {
    const InAirGap& g = session_.gaps[i];
    gaps.push_back({{"start_t", g.start_t},
                    {"end_t", g.end_t},
                    {"features", FeatureVectorToJson(batch.gaps[i])["values"]}});
  }
  derived["gaps"] = std::move(gaps);
  ojson groups = ojson::array();
  for (size_t i = 0; i < groups_.size(); ++i) {
    ojson g = {{"id", groups_[i].id},
               {"strokes", groups_[i].strokes},
               {"bbox", BBoxJson(groups_[i].bbox)}};
    ojson label_json = ShapeLabelToJson(labels_[i]);
    for (auto& [k, v] : label_json.items()) g[k] = v;
    groups.push_back(std::move(g));
  }
  derived["groups"] = std::move(groups);
  derived["summary"] = std::move(summary);
  derived["suggestions"] = std::move(suggestions_json);
  artifacts.derived_json = derived.dump(2) + "\n";

  absl::StatusOr<InterpretationGraph> graph =
      ToTriples(session_, groups_, labels_, &stats);
  // Groups and labels come from this session, so references always resolve.
  artifacts.graph_nt = graph.ok() ? SerializeNTriples(*graph) : "";
  return artifacts;
}

absl::StatusOr<SessionArtifacts> RebuildFromRawLog(std::string_view raw_log) {
  std::unique_ptr<SessionPipeline> pipeline;
  std::optional<SessionArtifacts> artifacts;
  const SessionPipeline::Emit drop = [](ojson) {};
  int line_number = 0;
  for (absl::string_view piece :
       absl::StrSplit(absl::string_view(raw_log.data(), raw_log.size()), '\n')) {
    ++line_number;
    std::string_view line(piece.data(), piece.size());
    if (line.empty()) continue;
    absl::StatusOr<Message> m = ParseMessage(line);
    if (!m.ok()) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat("raw log line ", line_number, ": ",
                                    std::string(m.status().message())));
    }
    if (pipeline == nullptr) {
      if (m->type != MessageType::kStartSession) {
        return MakeError(ErrorKind::kParseError,
                         "raw log does not begin with start_session");
      }
      INKASSESS_ASSIGN_OR_RETURN(pipeline,
                                 SessionPipeline::Start(m->body, {}));
      continue;
    }
    if (pipeline->ended()) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat("raw log line ", line_number,
                                    ": record after end_session"));
    }
    switch (m->type) {
      case MessageType::kSamples: {
        INKASSESS_ASSIGN_OR_RETURN(std::vector<RawSample> samples,
                                   pipeline->CheckSamples(m->body));
        std::optional<int64_t> seq;
        if (auto s = m->body.find("seq");
            s != m->body.end() && s->is_number_integer()) {
          seq = s->get<int64_t>();
        }
        pipeline->AddSamples(samples, seq, drop);
        break;
      }
      case MessageType::kEndSession:
        artifacts = pipeline->End(drop);
        break;
      default:
        return MakeError(ErrorKind::kParseError,
                         absl::StrCat("raw log line ", line_number,
                                      ": unexpected ",
                                      std::string(MessageTypeName(m->type))));
    }
  }
  if (pipeline == nullptr) {
    return MakeError(ErrorKind::kEmptyInput, "raw log is empty");
  }
  if (!artifacts.has_value()) artifacts = pipeline->End(drop);
  return *std::move(artifacts);
}

}  // namespace inkassess
