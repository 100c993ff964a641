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

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "inkassess/features/feature_vector.h"
#include "inkassess/features/session_features.h"
#include "inkassess/features/stroke_features.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/ink/segment.h"
#include "inkassess/service/client.h"
#include "inkassess/service/config.h"
#include "inkassess/service/pipeline.h"
#include "inkassess/service/protocol.h"
#include "inkassess/service/replay.h"
#include "inkassess/service/server.h"
#include "inkassess/service/store.h"
#include "inkassess/service/suggestions.h"
#include "inkassess/status.h"
#include "inkassess/synth/session_synth.h"

namespace inkassess {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::string TempRoot(std::string_view name) {
  std::string dir = absl::StrCat(testing::TempDir(), "/svc_",
                                 std::string(name), "_", ::getpid());
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::optional<ErrorKind> KindOf(const absl::Status& s) {
  return ErrorKindOf(s);
}

// A 20 mm horizontal line at 80 mm/s sampled every 5 ms, then a lift sample.
InkDocument LineDoc(const std::string& id, const std::string& test_id = "CDT") {
  InkDocument doc;
  doc.info.session_id = id;
  doc.info.test_id = test_id;
  for (int i = 0; i <= 50; ++i) {
    doc.samples.push_back({i * 5000, 50.0 + 0.4 * i, 50.0, 0.5, true});
  }
  doc.samples.push_back({255000, 70.0, 50.0, 0.0, false});
  return doc;
}

InkDocument SynthDoc(const std::string& test_id, uint64_t seed,
                     const std::string& id, SynthParams params = {}) {
  params.session_id = id;
  absl::StatusOr<SynthSession> synth = GenTestSession(test_id, params, seed);
  EXPECT_TRUE(synth.ok()) << synth.status();
  return synth->document;
}

json StartJson(const InkDocument& doc) {
  json j;
  SessionInfoToJson(doc.info, j);
  j["type"] = "start_session";
  return j;
}

// Runs a document through a pipeline in fixed-size batches, collecting every
// emitted event.
struct DirectRun {
  std::unique_ptr<SessionPipeline> pipeline;
  std::vector<ojson> events;
  SessionArtifacts artifacts;
};

DirectRun RunDirect(const InkDocument& doc, size_t batch,
                    const PipelineConfig& config = {}) {
  DirectRun run;
  auto p = SessionPipeline::Start(StartJson(doc), config);
  EXPECT_TRUE(p.ok()) << p.status();
  run.pipeline = *std::move(p);
  auto emit = [&](ojson e) { run.events.push_back(std::move(e)); };
  for (size_t i = 0; i < doc.samples.size(); i += batch) {
    std::vector<RawSample> part(
        doc.samples.begin() + i,
        doc.samples.begin() + std::min(i + batch, doc.samples.size()));
    run.pipeline->AddSamples(part, std::nullopt, emit);
  }
  run.artifacts = run.pipeline->End(emit);
  return run;
}

std::map<std::string, int> CountTypes(const std::vector<json>& messages) {
  std::map<std::string, int> counts;
  for (const json& m : messages) ++counts[m.value("type", "")];
  return counts;
}

bool SameDouble(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// ---------------------------------------------------------------------------
// Configuration.

EnvLookup MapEnv(std::map<std::string, std::string> values) {
  return [values](std::string_view name) -> std::optional<std::string> {
    auto it = values.find(std::string(name));
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
}

TEST(ConfigTest, EmptyObjectGivesDefaults) {
  absl::StatusOr<ServiceConfig> c = ConfigFromJson(json::object());
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(ConfigToJson(*c), ConfigToJson(ServiceConfig{}));
  EXPECT_EQ(c->port, 7878);
  EXPECT_EQ(c->http_port, 7879);
  EXPECT_EQ(c->pause_threshold_s, 0.2);
}

TEST(ConfigTest, RoundTripsThroughJson) {
  ServiceConfig c;
  c.store_root = "/var/lib/ink";
  c.port = 9100;
  c.token = "t";
  c.long_pause_s = 4.25;
  c.feature_format = "json";
  absl::StatusOr<ServiceConfig> back = ConfigFromJson(json(ConfigToJson(c)));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ConfigToJson(*back), ConfigToJson(c));
}

TEST(ConfigTest, RejectsUnknownKeysAndWrongTypes) {
  for (const char* text :
       {R"({"prot": 1})", R"({"port": "7000"})", R"({"long_pause_s": true})",
        R"({"token": 5})", R"([1])"}) {
    absl::StatusOr<ServiceConfig> c = ConfigFromJson(json::parse(text));
    EXPECT_EQ(KindOf(c.status()), ErrorKind::kInvalidConfig) << text;
  }
}

TEST(ConfigTest, EnvironmentOverridesFile) {
  std::string dir = TempRoot("config");
  std::string path = dir + "/service.json";
  ASSERT_TRUE(WriteTextFile(path, R"({"port": 7000, "long_pause_s": 2})").ok());
  absl::StatusOr<ServiceConfig> c =
      LoadConfig(path, MapEnv({{"INKASSESS_PORT", "9000"},
                               {"INKASSESS_TOKEN", "abc"},
                               {"INKASSESS_CORRECTION_OVERLAP", "0.5"}}));
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->port, 9000);
  EXPECT_EQ(c->token, "abc");
  EXPECT_EQ(c->correction_overlap, 0.5);
  EXPECT_EQ(c->long_pause_s, 2.0);  // from the file, not overridden

  EXPECT_EQ(KindOf(LoadConfig(path, MapEnv({{"INKASSESS_PORT", "x9"}}))
                       .status()),
            ErrorKind::kInvalidConfig);
  EXPECT_EQ(KindOf(LoadConfig(path, MapEnv({{"INKASSESS_LONG_PAUSE_S",
                                             "1.5s"}}))
                       .status()),
            ErrorKind::kInvalidConfig);
  EXPECT_FALSE(LoadConfig(dir + "/missing.json", MapEnv({})).ok());
}

TEST(ConfigTest, ValidationRejectsOutOfRangeValues) {
  auto invalid = [](auto mutate) {
    ServiceConfig c;
    mutate(c);
    return KindOf(ValidateConfig(c)) == ErrorKind::kInvalidConfig;
  };
  EXPECT_TRUE(ValidateConfig(ServiceConfig{}).ok());
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.port = -1; }));
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.http_port = 70000; }));
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.pause_threshold_s = -0.1; }));
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.correction_overlap = 1.5; }));
  EXPECT_TRUE(
      invalid([](ServiceConfig& c) { c.high_tremor_percentile = 101; }));
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.feature_format = "xml"; }));
  EXPECT_TRUE(invalid([](ServiceConfig& c) { c.store_root = ""; }));
}

TEST(PipelineConfigTest, RoundTripsAndIsStrict) {
  ServiceConfig s;
  s.group_gap_mm = 7.5;
  s.long_pause_s = 6;
  PipelineConfig p = ToPipelineConfig(s);
  EXPECT_EQ(p.features.pause_threshold_us, 200000);
  ojson j = PipelineConfigToJson(p);
  absl::StatusOr<PipelineConfig> back = PipelineConfigFromJson(json(j));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(PipelineConfigToJson(*back), j);

  json extra = j;
  extra["bogus"] = 1;
  EXPECT_EQ(KindOf(PipelineConfigFromJson(extra).status()),
            ErrorKind::kInvalidConfig);
  json missing = j;
  missing.erase(missing.begin());
  EXPECT_EQ(KindOf(PipelineConfigFromJson(missing).status()),
            ErrorKind::kInvalidConfig);
}

// ---------------------------------------------------------------------------
// Protocol framing.

TEST(ProtocolTest, ParsesClientMessages) {
  absl::StatusOr<Message> hello = ParseMessage(R"({"type":"hello","version":1})");
  ASSERT_TRUE(hello.ok()) << hello.status();
  EXPECT_EQ(hello->type, MessageType::kHello);
  EXPECT_EQ(hello->session_id, "");

  absl::StatusOr<Message> samples = ParseMessage(
      R"({"type":"samples","session_id":"s1","seq":3,"samples":[]})");
  ASSERT_TRUE(samples.ok()) << samples.status();
  EXPECT_EQ(samples->type, MessageType::kSamples);
  EXPECT_EQ(samples->session_id, "s1");
  EXPECT_EQ(samples->body["seq"], 3);
}

TEST(ProtocolTest, RejectsMalformedFrames) {
  for (const char* line :
       {"", "{", "[1,2]", "42", R"({"session_id":"a"})", R"({"type":7})",
        R"({"type":"launch","session_id":"a"})", R"({"type":"hello"})",
        R"({"type":"hello","version":"1"})",
        R"({"type":"samples","samples":[]})",
        R"({"type":"end_session","session_id":5})"}) {
    absl::StatusOr<Message> m = ParseMessage(line);
    EXPECT_EQ(KindOf(m.status()), ErrorKind::kProtocolError) << line;
  }
}

TEST(ProtocolTest, TypeNamesRoundTrip) {
  int client = 0;
  for (int i = 0; i <= static_cast<int>(MessageType::kError); ++i) {
    auto type = static_cast<MessageType>(i);
    EXPECT_EQ(ParseMessageType(MessageTypeName(type)), type);
    client += IsClientMessage(type) ? 1 : 0;
  }
  EXPECT_EQ(client, 6);
  EXPECT_EQ(ParseMessageType("nope"), std::nullopt);
}

TEST(ProtocolTest, ErrorMessageCarriesKind) {
  ojson e = ErrorMessage(MakeError(ErrorKind::kInvalidSpeed, "speed 0"), "s9");
  EXPECT_EQ(e["type"], "error");
  EXPECT_EQ(e["session_id"], "s9");
  EXPECT_EQ(e["kind"], "InvalidSpeed");
  EXPECT_THAT(e["message"].get<std::string>(), HasSubstr("speed 0"));
}

// ---------------------------------------------------------------------------
// Replay planning and pacing.

std::vector<RawSample> TimedSamples(std::vector<Micros> times) {
  std::vector<RawSample> out;
  for (Micros t : times) out.push_back({t, 1.0, 2.0, 0.5, true});
  return out;
}

TEST(ReplayTest, OffsetsScaleWithSpeed) {
  std::vector<RawSample> s = TimedSamples({0, 10000, 25000, 40000});
  absl::StatusOr<std::vector<ReplayStep>> half = PlanReplay(s, 0.5);
  ASSERT_TRUE(half.ok());
  std::vector<Micros> offsets;
  for (const ReplayStep& step : *half) offsets.push_back(step.offset_us);
  EXPECT_THAT(offsets, ElementsAre(0, 20000, 50000, 80000));

  absl::StatusOr<std::vector<ReplayStep>> third = PlanReplay(s, 3);
  ASSERT_TRUE(third.ok());
  offsets.clear();
  for (const ReplayStep& step : *third) offsets.push_back(step.offset_us);
  EXPECT_THAT(offsets, ElementsAre(0, 3333, 8333, 13333));
}

TEST(ReplayTest, WindowIsInclusiveAndRebased) {
  std::vector<RawSample> s = TimedSamples({0, 10000, 25000, 40000, 55000});
  absl::StatusOr<std::vector<ReplayStep>> plan =
      PlanReplay(s, 1, Micros{10000}, Micros{40000});
  ASSERT_TRUE(plan.ok());
  ASSERT_EQ(plan->size(), 3u);
  EXPECT_EQ((*plan)[0].sample.t, 10000);
  EXPECT_EQ((*plan)[0].offset_us, 0);
  EXPECT_EQ((*plan)[2].sample.t, 40000);
  EXPECT_EQ((*plan)[2].offset_us, 30000);

  absl::StatusOr<std::vector<ReplayStep>> empty =
      PlanReplay(s, 1, Micros{11000}, Micros{12000});
  ASSERT_TRUE(empty.ok());
  EXPECT_TRUE(empty->empty());
}

TEST(ReplayTest, RejectsBadSpeeds) {
  std::vector<RawSample> s = TimedSamples({0, 1});
  for (double speed : {0.0, -1.0, std::nan(""), HUGE_VAL}) {
    EXPECT_EQ(KindOf(PlanReplay(s, speed).status()), ErrorKind::kInvalidSpeed)
        << speed;
  }
}

TEST(ReplayTest, PacesEventsAtHalfSpeed) {
  std::vector<Micros> times;
  for (int i = 0; i <= 10; ++i) times.push_back(i * 20000);
  std::vector<RawSample> s = TimedSamples(times);
  absl::StatusOr<std::vector<ReplayStep>> plan = PlanReplay(s, 0.5);
  ASSERT_TRUE(plan.ok());
  std::vector<Micros> actual;
  auto start = std::chrono::steady_clock::now();
  size_t n = RunReplay(*plan, [&](const ReplayStep&) {
    actual.push_back(std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count());
  });
  ASSERT_EQ(n, plan->size());
  for (size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(static_cast<double>(actual[i]),
                static_cast<double>((*plan)[i].offset_us), 10000)
        << "event " << i;
  }
}

TEST(ReplayTest, CancelStopsPlayback) {
  std::vector<Micros> times;
  for (int i = 0; i < 50; ++i) times.push_back(i * 1000);
  std::vector<RawSample> s = TimedSamples(times);
  auto plan = PlanReplay(s, 1);
  ASSERT_TRUE(plan.ok());
  std::atomic<bool> cancel{false};
  size_t seen = 0;
  size_t n = RunReplay(
      *plan,
      [&](const ReplayStep&) {
        if (++seen == 3) cancel = true;
      },
      &cancel);
  EXPECT_EQ(n, 3u);
}

// ---------------------------------------------------------------------------
// Replay suggestions.

std::vector<FeatureVector> StrokeFeatureList(const InkSession& session) {
  std::vector<FeatureVector> out;
  for (const Stroke& s : session.strokes) out.push_back(StrokeFeatures(s));
  return out;
}

InkSession SessionOf(const InkDocument& doc) {
  absl::StatusOr<InkSession> s = BuildSession(doc.info, doc.samples);
  EXPECT_TRUE(s.ok()) << s.status();
  return *std::move(s);
}

TEST(PercentileTest, InterpolatesBetweenOrderStatistics) {
  EXPECT_DOUBLE_EQ(Percentile({3, 1, 2, 4}, 0), 1);
  EXPECT_DOUBLE_EQ(Percentile({3, 1, 2, 4}, 50), 2.5);
  EXPECT_DOUBLE_EQ(Percentile({3, 1, 2, 4}, 100), 4);
  // rank 0.95 * 3 = 2.85 -> 3 + 0.85 * (4 - 3)
  EXPECT_DOUBLE_EQ(Percentile({3, 1, 2, 4}, 95), 3.85);
  EXPECT_DOUBLE_EQ(Percentile({7}, 95), 7);
}

TEST(SuggestionTest, CleanSessionsHaveNone) {
  for (const char* test : {"CDT", "TMT", "MMSE"}) {
    for (uint64_t seed : {1u, 2u}) {
      InkSession s = SessionOf(SynthDoc(test, seed, "clean"));
      EXPECT_THAT(SuggestReplays(s, StrokeFeatureList(s)), ::testing::IsEmpty())
          << test << " seed " << seed;
    }
  }
}

TEST(SuggestionTest, LongPauseIsReportedOnce) {
  SynthParams p;
  p.long_pause_s = 5;
  p.long_pause_before_group = 4;
  absl::StatusOr<SynthSession> synth = GenTestSession("CDT", p, 7);
  ASSERT_TRUE(synth.ok()) << synth.status();
  ASSERT_EQ(synth->manifest.long_pauses.size(), 1u);
  InkSession s = SessionOf(synth->document);
  std::vector<ReplaySuggestion> got = SuggestReplays(s, StrokeFeatureList(s));
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].reason, SuggestionReason::kLongPause);
  int before = synth->manifest.long_pauses[0].before_stroke;
  EXPECT_EQ(got[0].start_t, s.strokes[before - 1].EndT());
  EXPECT_EQ(got[0].end_t, s.strokes[before].StartT());
  EXPECT_NEAR(got[0].evidence["duration_s"], 5.0, 0.1);
}

TEST(SuggestionTest, RetracedStrokeIsACorrection) {
  for (uint64_t seed : {1u, 2u, 3u}) {
    SynthParams p;
    p.correction = true;
    p.correction_group = 2;
    absl::StatusOr<SynthSession> synth = GenTestSession("CDT", p, seed);
    ASSERT_TRUE(synth.ok()) << synth.status();
    ASSERT_EQ(synth->manifest.corrections.size(), 1u);
    const CorrectionTruth& truth = synth->manifest.corrections[0];
    InkSession s = SessionOf(synth->document);
    std::vector<ReplaySuggestion> got = SuggestReplays(s, StrokeFeatureList(s));
    ASSERT_EQ(got.size(), 1u) << "seed " << seed;
    EXPECT_EQ(got[0].reason, SuggestionReason::kCorrection);
    EXPECT_EQ(got[0].evidence["stroke"], truth.stroke);
    EXPECT_EQ(got[0].evidence["original_stroke"], truth.original_stroke);
    EXPECT_EQ(got[0].start_t, s.strokes[truth.stroke].StartT());
    EXPECT_GE(got[0].evidence["overlap_ratio"], 0.3);
  }
}

TEST(SuggestionTest, TremulousStrokeStandsOut) {
  // Twenty slow parallel lines 5 mm apart; line 12 carries a 0.5 mm, 8 Hz
  // wobble.
  std::vector<RawSample> samples;
  Micros t = 0;
  for (int line = 0; line < 20; ++line) {
    for (int i = 0; i <= 100; ++i) {
      double y = 20.0 + 5 * line;
      double time_s = i * 0.005;
      if (line == 12) y += 0.5 * std::sin(2 * kPi * 8 * time_s);
      samples.push_back({t, 20.0 + 0.05 * i, y, 0.5, true});
      t += 5000;
    }
    samples.push_back({t, 25.0, 20.0 + 5 * line, 0, false});
    t += 300000;
  }
  SessionInfo info{"tremor", "CDT", "", {}, InputSource::kDigitalPaper};
  absl::StatusOr<InkSession> s = BuildSession(info, samples);
  ASSERT_TRUE(s.ok()) << s.status();
  std::vector<ReplaySuggestion> got = SuggestReplays(*s, StrokeFeatureList(*s));
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].reason, SuggestionReason::kHighTremor);
  EXPECT_EQ(got[0].evidence["stroke"], 12);
  EXPECT_EQ(got[0].start_t, s->strokes[12].StartT());

  // Below the floor nothing is reported even though one stroke is the max.
  SuggestionConfig strict;
  strict.high_tremor_floor_mm = 10;
  EXPECT_THAT(SuggestReplays(*s, StrokeFeatureList(*s), strict),
              ::testing::IsEmpty());
}

TEST(SuggestionTest, JsonShape) {
  ReplaySuggestion s{100, 200, SuggestionReason::kHighTremor, {{"stroke", 2}}};
  ojson j = SuggestionToJson(s);
  EXPECT_EQ(j.dump(),
            R"({"reason":"high_tremor","start_t":100,"end_t":200,)"
            R"("evidence":{"stroke":2}})");
}

// ---------------------------------------------------------------------------
// Pipeline without a network.

TEST(PipelineTest, OneStrokeEmitsOneOfEach) {
  DirectRun run = RunDirect(LineDoc("one"), 10);
  std::map<std::string, int> counts;
  for (const ojson& e : run.events) ++counts[e["type"].get<std::string>()];
  EXPECT_EQ(counts["stroke_completed"], 1);
  EXPECT_EQ(counts["classification"], 1);
  EXPECT_EQ(counts["feature_update"], 6);
  EXPECT_EQ(counts["error"], 0);
  EXPECT_EQ(run.artifacts.summary_message["type"], "session_summary");
  for (const ojson& e : run.events) EXPECT_EQ(e["session_id"], "one");
}

TEST(PipelineTest, FeatureUpdateReportsOpenStroke) {
  InkDocument doc = LineDoc("open");
  auto p = SessionPipeline::Start(StartJson(doc), {});
  ASSERT_TRUE(p.ok());
  std::vector<ojson> events;
  std::vector<RawSample> first(doc.samples.begin(), doc.samples.begin() + 11);
  (*p)->AddSamples(first, 1, [&](ojson e) { events.push_back(e); });
  ASSERT_EQ(events.size(), 1u);
  const ojson& u = events[0];
  EXPECT_EQ(u["type"], "feature_update");
  EXPECT_EQ(u["seq"], 1);
  EXPECT_EQ(u["samples"], 11);
  EXPECT_EQ(u["t"], 50000);
  EXPECT_EQ(u["pen_down"], true);
  EXPECT_EQ(u["stroke_count"], 0);
  // The last sample is held back until a later timestamp shows up.
  EXPECT_EQ(u["open_stroke"]["sample_count"], 10);
  EXPECT_NEAR(u["open_stroke"]["path_length_mm"].get<double>(), 3.6, 1e-9);
}

TEST(PipelineTest, StreamingMatchesBatchFeatures) {
  for (const char* test : {"CDT", "TMT", "ROCF"}) {
    InkDocument doc = SynthDoc(test, 5, "stream");
    InkSession session = SessionOf(doc);
    SessionFeatureSet batch = SessionFeatures(session);
    for (size_t size : {1u, 13u, 500u}) {
      DirectRun run = RunDirect(doc, size);
      const auto& streamed = run.pipeline->stroke_features();
      ASSERT_EQ(streamed.size(), batch.strokes.size());
      for (size_t i = 0; i < streamed.size(); ++i) {
        for (size_t k = 0; k < streamed[i].size(); ++k) {
          EXPECT_TRUE(SameDouble(streamed[i].at(k), batch.strokes[i].at(k),
                                 1e-9))
              << test << " stroke " << i << " " << streamed[i].ids()[k];
        }
      }
      FeatureVector doc_live = run.pipeline->document();
      for (size_t k = 0; k < doc_live.size(); ++k) {
        EXPECT_TRUE(SameDouble(doc_live.at(k), batch.document.at(k), 1e-9))
            << test << " batch " << size << " " << doc_live.ids()[k];
      }
    }
  }
}

TEST(PipelineTest, DerivedOutputIgnoresBatching) {
  InkDocument doc = SynthDoc("CDT", 9, "batching");
  DirectRun a = RunDirect(doc, 1);
  DirectRun b = RunDirect(doc, 64);
  EXPECT_EQ(a.artifacts.derived_json, b.artifacts.derived_json);
  EXPECT_EQ(a.artifacts.graph_nt, b.artifacts.graph_nt);
  EXPECT_FALSE(a.artifacts.graph_nt.empty());
}

std::string RawLogFor(const InkDocument& doc, size_t batch, bool end = true) {
  auto p = SessionPipeline::Start(StartJson(doc), {});
  EXPECT_TRUE(p.ok());
  std::string log = (*p)->start_record().dump() + "\n";
  int seq = 0;
  for (size_t i = 0; i < doc.samples.size(); i += batch) {
    json m = {{"type", "samples"}, {"session_id", doc.info.session_id},
              {"seq", ++seq}};
    json arr = json::array();
    for (size_t k = i; k < std::min(i + batch, doc.samples.size()); ++k) {
      arr.push_back(SampleToJson(doc.samples[k]));
    }
    m["samples"] = arr;
    log += m.dump() + "\n";
  }
  if (end) {
    log += json({{"type", "end_session"}, {"session_id", doc.info.session_id}})
               .dump() +
           "\n";
  }
  return log;
}

TEST(RebuildTest, RawLogReproducesArtifacts) {
  InkDocument doc = SynthDoc("CDT", 4, "rebuild");
  DirectRun live = RunDirect(doc, 7);
  absl::StatusOr<SessionArtifacts> again = RebuildFromRawLog(RawLogFor(doc, 7));
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->derived_json, live.artifacts.derived_json);
  EXPECT_EQ(again->graph_nt, live.artifacts.graph_nt);
  EXPECT_EQ(again->summary_message, live.artifacts.summary_message);

  // A log cut off before end_session is finalized the same way.
  absl::StatusOr<SessionArtifacts> open =
      RebuildFromRawLog(RawLogFor(doc, 7, /*end=*/false));
  ASSERT_TRUE(open.ok()) << open.status();
  EXPECT_EQ(open->derived_json, live.artifacts.derived_json);
}

TEST(RebuildTest, RejectsBrokenLogs) {
  EXPECT_EQ(KindOf(RebuildFromRawLog("").status()), ErrorKind::kEmptyInput);
  std::string samples_first =
      R"({"type":"samples","session_id":"a","samples":[]})"
      "\n";
  EXPECT_EQ(KindOf(RebuildFromRawLog(samples_first).status()),
            ErrorKind::kParseError);
  std::string log = RawLogFor(LineDoc("bad"), 10);
  std::string garbled = log + "{not json\n";
  absl::StatusOr<SessionArtifacts> r = RebuildFromRawLog(garbled);
  EXPECT_EQ(KindOf(r.status()), ErrorKind::kParseError);
  EXPECT_THAT(std::string(r.status().message()), HasSubstr("line 9"));
}

// ---------------------------------------------------------------------------
// Session store.

TEST(StoreTest, SessionIds) {
  for (const char* ok : {"a", "s-01", "A.b_c", "x.."}) {
    EXPECT_TRUE(SessionStore::IsValidSessionId(ok)) << ok;
  }
  for (const char* bad : {"", ".", "..", "a/b", "a b", "é", "a\\b"}) {
    EXPECT_FALSE(SessionStore::IsValidSessionId(bad)) << bad;
  }
  EXPECT_TRUE(SessionStore::IsValidSessionId(std::string(128, 'a')));
  EXPECT_FALSE(SessionStore::IsValidSessionId(std::string(129, 'a')));
}

TEST(StoreTest, CreateListAndArtifacts) {
  SessionStore store(TempRoot("store"));
  EXPECT_TRUE(store.List().empty());
  for (const char* id : {"b", "a", "c"}) {
    auto w = store.Create(id);
    ASSERT_TRUE(w.ok()) << w.status();
    ASSERT_TRUE((*w)->Append(R"({"x":1})").ok());
  }
  EXPECT_EQ(KindOf(store.Create("a").status()), ErrorKind::kProtocolError);
  EXPECT_EQ(KindOf(store.Create("../x").status()), ErrorKind::kProtocolError);
  EXPECT_THAT(store.List(), ElementsAre("a", "b", "c"));
  EXPECT_TRUE(store.Exists("a"));
  EXPECT_FALSE(store.Complete("a"));
  EXPECT_EQ(*store.ReadFile("a", kRawLogFile), "{\"x\":1}\n");
  ASSERT_TRUE(store.WriteArtifacts("a", "{}\n", "").ok());
  EXPECT_TRUE(store.Complete("a"));
  EXPECT_EQ(*store.ReadFile("a", kDerivedFile), "{}\n");
  EXPECT_EQ(KindOf(store.ReadFile("zz", kDerivedFile).status()),
            ErrorKind::kUnknownSession);
}

// ---------------------------------------------------------------------------
// The running service.

class ServiceTest : public testing::Test {
 protected:
  void SetUp() override { StartWith(ServiceConfig{}); }
  void TearDown() override {
    if (service_) service_->Stop();
  }

  void StartWith(ServiceConfig config) {
    if (service_) service_->Stop();
    root_ = TempRoot(
        testing::UnitTest::GetInstance()->current_test_info()->name());
    config.store_root = root_;
    config.port = 0;
    config.http_port = 0;
    config_ = config;
    service_ = std::make_unique<SessionService>(config);
    absl::Status s = service_->Start();
    ASSERT_TRUE(s.ok()) << s;
  }

  std::unique_ptr<NdjsonClient> Connect(bool hello = true) {
    auto c = NdjsonClient::Connect("127.0.0.1", service_->port());
    EXPECT_TRUE(c.ok()) << c.status();
    if (!c.ok()) return nullptr;
    if (hello) {
      auto reply = (*c)->Hello(config_.token);
      EXPECT_TRUE(reply.ok()) << reply.status();
      EXPECT_EQ(reply->value("type", ""), "hello");
    }
    return *std::move(c);
  }

  json Next(NdjsonClient& c) {
    auto m = c.Receive(std::chrono::seconds(10));
    EXPECT_TRUE(m.ok()) << m.status();
    return m.ok() ? *m : json();
  }

  std::vector<json> Ingest(NdjsonClient& c, const InkDocument& doc,
                           int batch = 8) {
    IngestOptions options;
    options.batch_size = batch;
    auto r = IngestDocument(c, doc, options);
    EXPECT_TRUE(r.ok()) << r.status();
    return r.ok() ? *r : std::vector<json>{};
  }

  std::string File(const std::string& id, const char* name) {
    auto text = service_->store().ReadFile(id, name);
    EXPECT_TRUE(text.ok()) << text.status();
    return text.ok() ? *text : "";
  }

  std::string root_;
  ServiceConfig config_;
  std::unique_ptr<SessionService> service_;
};

TEST_F(ServiceTest, HelloReportsVersions) {
  auto c = Connect(/*hello=*/false);
  auto reply = c->Hello();
  ASSERT_TRUE(reply.ok());
  EXPECT_EQ((*reply)["version"], kProtocolVersion);
  EXPECT_TRUE((*reply)["engine_version"].is_string());
}

TEST_F(ServiceTest, OneStrokeSessionOverTheWire) {
  auto c = Connect();
  std::vector<json> got = Ingest(*c, LineDoc("one"), 10);
  std::map<std::string, int> counts = CountTypes(got);
  EXPECT_EQ(counts["stroke_completed"], 1);
  EXPECT_EQ(counts["classification"], 1);
  EXPECT_EQ(counts["session_summary"], 1);
  EXPECT_EQ(counts["feature_update"], 6);
  EXPECT_EQ(counts["error"], 0);
  for (const json& m : got) EXPECT_EQ(m["session_id"], "one");
  // Acks carry the client's sequence numbers in order.
  int64_t seq = 0;
  for (const json& m : got) {
    if (m["type"] == "feature_update") {
      EXPECT_EQ(m["seq"], ++seq);
    }
  }
  EXPECT_TRUE(service_->store().Complete("one"));
}

TEST_F(ServiceTest, VersionMismatchIsRejected) {
  auto c = Connect(/*hello=*/false);
  ASSERT_TRUE(c->Send({{"type", "hello"}, {"version", 2}}).ok());
  json reply = Next(*c);
  EXPECT_EQ(reply["type"], "error");
  EXPECT_EQ(reply["kind"], "VersionMismatch");
}

TEST_F(ServiceTest, MessagesBeforeHelloAreProtocolErrors) {
  auto c = Connect(/*hello=*/false);
  ASSERT_TRUE(c->Send(StartJson(LineDoc("early"))).ok());
  json reply = Next(*c);
  EXPECT_EQ(reply["kind"], "ProtocolError");
  EXPECT_FALSE(service_->store().Exists("early"));
}

TEST_F(ServiceTest, SamplesBeforeStartAreProtocolErrors) {
  auto c = Connect();
  ASSERT_TRUE(c->SendLine(R"({"type":"samples","session_id":"ghost","seq":1,)"
                          R"("samples":[{"t":0,"x":1,"y":1,"p":0.5,"c":true}]})")
                  .ok());
  json reply = Next(*c);
  EXPECT_EQ(reply["type"], "error");
  EXPECT_EQ(reply["kind"], "ProtocolError");
  EXPECT_EQ(reply["session_id"], "ghost");
}

TEST_F(ServiceTest, ServerMessagesFromClientsAreRejected) {
  auto c = Connect();
  ASSERT_TRUE(
      c->SendLine(R"({"type":"score_update","session_id":"x","result":{}})")
          .ok());
  EXPECT_EQ(Next(*c)["kind"], "ProtocolError");
  ASSERT_TRUE(c->SendLine("not json").ok());
  EXPECT_EQ(Next(*c)["kind"], "ProtocolError");
}

TEST_F(ServiceTest, BadStartsAreReported) {
  auto c = Connect();
  InkDocument doc = LineDoc("unknown-test", "XYZ");
  ASSERT_TRUE(c->Send(StartJson(doc)).ok());
  EXPECT_EQ(Next(*c)["kind"], "UnknownTest");
  doc = LineDoc("bad/id");
  ASSERT_TRUE(c->Send(StartJson(doc)).ok());
  EXPECT_EQ(Next(*c)["kind"], "ProtocolError");
}

TEST_F(ServiceTest, NonMonotonicBatchEndsTheSessionButKeepsTheRawLog) {
  auto c = Connect();
  InkDocument doc = LineDoc("nm");
  ASSERT_TRUE(c->Send(StartJson(doc)).ok());
  auto batch = [&](std::vector<RawSample> samples, int seq) {
    json m = {{"type", "samples"}, {"session_id", "nm"}, {"seq", seq}};
    m["samples"] = json::array();
    for (const RawSample& s : samples) m["samples"].push_back(SampleToJson(s));
    return c->Send(m);
  };
  ASSERT_TRUE(batch({doc.samples.begin(), doc.samples.begin() + 5}, 1).ok());
  EXPECT_EQ(Next(*c)["type"], "feature_update");
  ASSERT_TRUE(batch({doc.samples[2]}, 2).ok());
  json err = Next(*c);
  EXPECT_EQ(err["type"], "error");
  EXPECT_EQ(err["kind"], "NonMonotonicTimestamp");

  // Further traffic for the session is refused.
  ASSERT_TRUE(batch({doc.samples[10]}, 3).ok());
  EXPECT_EQ(Next(*c)["kind"], "ProtocolError");

  EXPECT_TRUE(service_->store().Exists("nm"));
  EXPECT_FALSE(service_->store().Complete("nm"));
  std::string raw = File("nm", kRawLogFile);
  std::vector<std::string> lines =
      absl::StrSplit(raw, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_THAT(lines[0], HasSubstr("\"start_session\""));
  EXPECT_THAT(lines[1], HasSubstr("\"seq\":1"));
  // The preserved prefix can still be rebuilt offline.
  EXPECT_TRUE(RebuildFromRawLog(raw).ok());
}

TEST_F(ServiceTest, DuplicateSessionIdIsRefused) {
  auto c = Connect();
  Ingest(*c, LineDoc("dup"));
  ASSERT_TRUE(c->Send(StartJson(LineDoc("dup"))).ok());
  EXPECT_EQ(Next(*c)["kind"], "ProtocolError");
}

TEST_F(ServiceTest, StoredArtifactsRebuildByteForByte) {
  auto c = Connect();
  std::vector<json> got = Ingest(*c, SynthDoc("CDT", 3, "cdt-3"), 8);
  ASSERT_FALSE(got.empty());
  ASSERT_EQ(got.back()["type"], "session_summary");
  std::string raw = File("cdt-3", kRawLogFile);
  absl::StatusOr<SessionArtifacts> again = RebuildFromRawLog(raw);
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->derived_json, File("cdt-3", kDerivedFile));
  EXPECT_EQ(again->graph_nt, File("cdt-3", kGraphFile));
  EXPECT_EQ(json(again->summary_message), got.back());
}

TEST_F(ServiceTest, WireEventsMatchDirectPipeline) {
  InkDocument doc = SynthDoc("TMT", 2, "tmt-2");
  auto c = Connect();
  std::vector<json> got = Ingest(*c, doc, 5);
  DirectRun direct = RunDirect(doc, 5);
  std::vector<json> expected(direct.events.begin(), direct.events.end());
  expected.push_back(json(direct.artifacts.summary_message));
  // The wire acks carry explicit seq values; the direct run numbers batches
  // itself, which gives the same numbers.
  EXPECT_EQ(got, expected);
}

TEST_F(ServiceTest, SubscriberSeesTheSameEventOrder) {
  InkDocument doc = SynthDoc("CDT", 6, "watched");
  auto owner = Connect();
  ASSERT_TRUE(owner->Send(StartJson(doc)).ok());
  size_t third = doc.samples.size() / 3;
  json first = {{"type", "samples"}, {"session_id", "watched"}, {"seq", 1}};
  first["samples"] = json::array();
  for (size_t i = 0; i < third; ++i) {
    first["samples"].push_back(SampleToJson(doc.samples[i]));
  }
  ASSERT_TRUE(owner->Send(first).ok());
  std::vector<json> owner_seen;
  do {
    owner_seen.push_back(Next(*owner));
  } while (owner_seen.back()["type"] != "feature_update");

  auto watcher = Connect();
  ASSERT_TRUE(
      watcher->Send({{"type", "subscribe"}, {"session_id", "watched"}}).ok());
  std::this_thread::sleep_for(std::chrono::milliseconds(200));

  int64_t seq = 1;
  for (size_t i = third; i < doc.samples.size(); i += 10) {
    json m = {{"type", "samples"}, {"session_id", "watched"}, {"seq", ++seq}};
    m["samples"] = json::array();
    for (size_t k = i; k < std::min(i + 10, doc.samples.size()); ++k) {
      m["samples"].push_back(SampleToJson(doc.samples[k]));
    }
    ASSERT_TRUE(owner->Send(m).ok());
  }
  ASSERT_TRUE(
      owner->Send({{"type", "end_session"}, {"session_id", "watched"}}).ok());
  do {
    owner_seen.push_back(Next(*owner));
  } while (owner_seen.back()["type"] != "session_summary");
  std::vector<json> watcher_seen;
  do {
    watcher_seen.push_back(Next(*watcher));
  } while (watcher_seen.back()["type"] != "session_summary");

  ASSERT_GT(watcher_seen.size(), 1u);
  ASSERT_LE(watcher_seen.size(), owner_seen.size());
  std::vector<json> tail(owner_seen.end() - watcher_seen.size(),
                         owner_seen.end());
  EXPECT_EQ(watcher_seen, tail);
}

TEST_F(ServiceTest, SubscribeToFinishedOrUnknownSession) {
  auto c = Connect();
  std::vector<json> got = Ingest(*c, SynthDoc("CDT", 1, "done"));
  ASSERT_TRUE(
      c->Send({{"type", "subscribe"}, {"session_id", "done"}}).ok());
  json summary = Next(*c);
  EXPECT_EQ(summary, got.back());
  // Key order follows the stored document.
  EXPECT_EQ(summary.dump(), got.back().dump());

  ASSERT_TRUE(
      c->Send({{"type", "subscribe"}, {"session_id", "never"}}).ok());
  EXPECT_EQ(Next(*c)["kind"], "UnknownSession");
}

TEST_F(ServiceTest, ConcurrentSessionsStayIsolated) {
  std::vector<InkDocument> docs = {SynthDoc("CDT", 1, "iso-a"),
                                   SynthDoc("TMT", 2, "iso-b"),
                                   SynthDoc("ROCF", 3, "iso-c")};
  std::vector<std::vector<json>> got(docs.size());
  std::vector<std::thread> threads;
  for (size_t i = 0; i < docs.size(); ++i) {
    threads.emplace_back([&, i] {
      auto c = NdjsonClient::Connect("127.0.0.1", service_->port());
      ASSERT_TRUE(c.ok());
      ASSERT_TRUE((*c)->Hello().ok());
      IngestOptions options;
      options.batch_size = 4;
      auto r = IngestDocument(**c, docs[i], options);
      ASSERT_TRUE(r.ok()) << r.status();
      got[i] = *r;
    });
  }
  for (std::thread& t : threads) t.join();
  for (size_t i = 0; i < docs.size(); ++i) {
    const std::string& id = docs[i].info.session_id;
    ASSERT_FALSE(got[i].empty());
    EXPECT_EQ(got[i].back()["type"], "session_summary");
    for (const json& m : got[i]) EXPECT_EQ(m["session_id"], id);
    DirectRun alone = RunDirect(docs[i], 1000);
    EXPECT_EQ(File(id, kDerivedFile), alone.artifacts.derived_json) << id;
    EXPECT_EQ(File(id, kGraphFile), alone.artifacts.graph_nt) << id;
  }
}

TEST_F(ServiceTest, ReplayStreamsTheRequestedWindow) {
  auto c = Connect();
  InkDocument doc = LineDoc("rp");
  Ingest(*c, doc);

  ASSERT_TRUE(c->Send({{"type", "replay_request"},
                       {"session_id", "rp"},
                       {"speed", 0}})
                  .ok());
  EXPECT_EQ(Next(*c)["kind"], "InvalidSpeed");
  ASSERT_TRUE(
      c->Send({{"type", "replay_request"}, {"session_id", "rp"}}).ok());
  EXPECT_EQ(Next(*c)["kind"], "InvalidSpeed");
  ASSERT_TRUE(c->Send({{"type", "replay_request"},
                       {"session_id", "nothing"},
                       {"speed", 1}})
                  .ok());
  EXPECT_EQ(Next(*c)["kind"], "UnknownSession");

  ASSERT_TRUE(c->Send({{"type", "replay_request"},
                       {"session_id", "rp"},
                       {"speed", 20},
                       {"from_t", 50000},
                       {"to_t", 100000}})
                  .ok());
  std::vector<Micros> times;
  json m;
  while (true) {
    m = Next(*c);
    ASSERT_EQ(m["type"], "replay_event");
    if (m.value("done", false)) break;
    EXPECT_EQ(m["index"], times.size());
    times.push_back(m["t"].get<Micros>());
    EXPECT_EQ(m["sample"]["t"], m["t"]);
  }
  std::vector<Micros> expected;
  for (const RawSample& s : doc.samples) {
    if (s.t >= 50000 && s.t <= 100000) expected.push_back(s.t);
  }
  EXPECT_EQ(times, expected);
  EXPECT_EQ(m["count"], expected.size());
}

TEST_F(ServiceTest, HttpListsSessionsAndSummaries) {
  auto c = Connect();
  std::vector<json> got = Ingest(*c, SynthDoc("CDT", 2, "h1"));
  // An abandoned session: started but never ended.
  ASSERT_TRUE(c->Send(StartJson(LineDoc("h2", "TMT"))).ok());
  ASSERT_TRUE(
      c->Send({{"type", "samples"},
               {"session_id", "h2"},
               {"seq", 1},
               {"samples", {SampleToJson(RawSample{0, 1, 1, 0.5, true})}}})
          .ok());
  EXPECT_EQ(Next(*c)["type"], "feature_update");

  httplib::Client http("127.0.0.1", service_->http_port());
  auto list = http.Get("/sessions");
  ASSERT_TRUE(list);
  EXPECT_EQ(list->status, 200);
  json sessions = json::parse(list->body)["sessions"];
  ASSERT_EQ(sessions.size(), 2u);
  EXPECT_EQ(sessions[0],
            json({{"session_id", "h1"}, {"test_id", "CDT"},
                  {"status", "complete"}}));
  EXPECT_EQ(sessions[1],
            json({{"session_id", "h2"}, {"test_id", "TMT"}, {"status", "live"}}));

  auto summary = http.Get("/sessions/h1/summary");
  ASSERT_TRUE(summary);
  EXPECT_EQ(summary->status, 200);
  json body = json::parse(summary->body);
  EXPECT_EQ(body["session_id"], "h1");
  EXPECT_EQ(body["test_id"], "CDT");
  EXPECT_EQ(body["summary"], got.back()["summary"]);
  EXPECT_EQ(body["suggestions"], got.back()["suggestions"]);

  auto graph = http.Get("/sessions/h1/graph");
  ASSERT_TRUE(graph);
  EXPECT_EQ(graph->status, 200);
  EXPECT_EQ(graph->body, File("h1", kGraphFile));
  EXPECT_THAT(graph->get_header_value("Content-Type"),
              HasSubstr("application/n-triples"));

  auto missing = http.Get("/sessions/nope/summary");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["kind"], "UnknownSession");

  // Dropping the owner leaves h2 behind as an incomplete session.
  c.reset();
  for (int i = 0; i < 100; ++i) {
    auto again = http.Get("/sessions");
    ASSERT_TRUE(again);
    if (json::parse(again->body)["sessions"][1]["status"] == "incomplete") {
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  auto after = http.Get("/sessions");
  ASSERT_TRUE(after);
  EXPECT_EQ(json::parse(after->body)["sessions"][1]["status"], "incomplete");
  auto unfinished = http.Get("/sessions/h2/summary");
  ASSERT_TRUE(unfinished);
  EXPECT_EQ(unfinished->status, 404);
}

TEST_F(ServiceTest, TokenGuardsBothInterfaces) {
  ServiceConfig config;
  config.token = "s3cret";
  StartWith(config);

  auto bare = NdjsonClient::Connect("127.0.0.1", service_->port());
  ASSERT_TRUE(bare.ok());
  auto refused = (*bare)->Hello();
  ASSERT_TRUE(refused.ok());
  EXPECT_EQ((*refused)["kind"], "ProtocolError");
  auto wrong = (*bare)->Hello("guess");
  ASSERT_TRUE(wrong.ok());
  EXPECT_EQ((*wrong)["kind"], "ProtocolError");
  auto right = (*bare)->Hello("s3cret");
  ASSERT_TRUE(right.ok());
  EXPECT_EQ((*right)["type"], "hello");

  httplib::Client http("127.0.0.1", service_->http_port());
  auto denied = http.Get("/sessions");
  ASSERT_TRUE(denied);
  EXPECT_EQ(denied->status, 401);
  auto allowed = http.Get("/sessions", {{"Authorization", "Bearer s3cret"}});
  ASSERT_TRUE(allowed);
  EXPECT_EQ(allowed->status, 200);
}

TEST_F(ServiceTest, StopIsIdempotentAndClosesClients) {
  auto c = Connect();
  service_->Stop();
  service_->Stop();
  auto m = c->Receive(std::chrono::seconds(5));
  EXPECT_EQ(KindOf(m.status()), ErrorKind::kIoError);
}

}  // namespace
}  // namespace inkassess
