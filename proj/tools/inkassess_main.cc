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

// Command-line entry point: analyze, score, synth, serve, replay, rebuild.
//
// Exit codes: 0 ok, 1 runtime error (error JSON on stderr), 2 usage error.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "inkassess/battery/layouts.h"
#include "inkassess/battery/registry.h"
#include "inkassess/battery/scoring.h"
#include "inkassess/battery/template.h"
#include "inkassess/features/catalog.h"
#include "inkassess/features/export.h"
#include "inkassess/features/session_features.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/ink/segment.h"
#include "inkassess/service/config.h"
#include "inkassess/service/pipeline.h"
#include "inkassess/service/protocol.h"
#include "inkassess/service/replay.h"
#include "inkassess/service/server.h"
#include "inkassess/service/store.h"
#include "inkassess/status.h"
#include "inkassess/synth/session_synth.h"
#include "inkassess/version.h"

namespace inkassess {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// Writes `text` to `path`, or to stdout when `path` is empty or "-".
absl::Status Output(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return absl::OkStatus();
  }
  return WriteTextFile(path, text);
}

absl::StatusOr<ServiceConfig> Config(const std::string& path) {
  return LoadConfig(path);
}

struct AnalyzeArgs {
  std::string input;
  std::string format;
  std::string level = "stroke";
  std::string out;
  std::string config;
};

absl::Status Analyze(const AnalyzeArgs& a) {
  INKASSESS_ASSIGN_OR_RETURN(ServiceConfig config, Config(a.config));
  INKASSESS_ASSIGN_OR_RETURN(InkDocument doc, ReadInkFile(a.input));
  INKASSESS_ASSIGN_OR_RETURN(InkSession session,
                             BuildSession(doc.info, doc.samples));
  SessionFeatureSet set =
      SessionFeatures(session, ToPipelineConfig(config).features);
  std::optional<FeatureLevel> level = ParseFeatureLevel(a.level);
  if (!level.has_value()) {
    return MakeError(ErrorKind::kInvalidConfig,
                     absl::StrCat("unknown level '", a.level, "'"));
  }
  std::vector<FeatureVector> vectors;
  switch (*level) {
    case FeatureLevel::kStroke:
      vectors = set.strokes;
      break;
    case FeatureLevel::kGap:
      vectors = set.gaps;
      break;
    case FeatureLevel::kDocument:
      vectors = {set.document};
      break;
  }
  std::string format = a.format.empty() ? config.feature_format : a.format;
  if (format == "csv") return Output(a.out, FeaturesToCsv(vectors, *level));
  return Output(a.out, FeaturesToJson(vectors).dump(2) + "\n");
}

struct ScoreArgs {
  std::string input;
  std::string tmpl;
  std::string out;
  std::string config;
  bool summary = false;
};

absl::Status Score(const ScoreArgs& a) {
  INKASSESS_ASSIGN_OR_RETURN(ServiceConfig config, Config(a.config));
  PipelineConfig pc = ToPipelineConfig(config);
  INKASSESS_ASSIGN_OR_RETURN(InkDocument doc, ReadInkFile(a.input));
  INKASSESS_ASSIGN_OR_RETURN(InkSession session,
                             BuildSession(doc.info, doc.samples));
  TestTemplate tmpl;
  if (a.tmpl.empty()) {
    INKASSESS_ASSIGN_OR_RETURN(tmpl, DefaultTemplate(doc.info.test_id));
  } else {
    INKASSESS_ASSIGN_OR_RETURN(tmpl, ReadTemplateFile(a.tmpl));
  }
  INKASSESS_ASSIGN_OR_RETURN(TestResult result,
                             ScoreSession(session, tmpl, pc.scoring));
  if (!a.summary) {
    return Output(a.out, TestResultToJson(result).dump(2) + "\n");
  }
  std::vector<TestResult> results = {result};
  SummativeStats stats = Summarize(session, results, pc.scoring);
  return Output(a.out, SummaryToJson(stats).dump(2) + "\n");
}

struct SynthArgs {
  std::string test_id;
  uint64_t seed = 1;
  std::string out = ".";
  std::string session_id;
  std::string source = "digital-paper";
  SynthParams params;
};

absl::Status Synth(SynthArgs a) {
  if (!a.session_id.empty()) {
    a.params.session_id = a.session_id;
  } else {
    a.params.session_id = absl::StrCat(a.test_id, "-", a.seed);
  }
  std::optional<InputSource> source = ParseInputSource(a.source);
  if (!source.has_value()) {
    return MakeError(ErrorKind::kInvalidSpec,
                     absl::StrCat("unknown source '", a.source, "'"));
  }
  a.params.source = *source;
  INKASSESS_ASSIGN_OR_RETURN(SynthSession synth,
                             GenTestSession(a.test_id, a.params, a.seed));
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot create ", a.out, ": ", ec.message()));
  }
  std::string base = (fs::path(a.out) / a.params.session_id).string();
  INKASSESS_RETURN_IF_ERROR(
      WriteTextFile(base + ".ink.json", WriteInkJson(synth.document)));
  INKASSESS_RETURN_IF_ERROR(WriteTextFile(
      base + ".manifest.json", ManifestToJson(synth.manifest).dump(2) + "\n"));
  std::cout << ojson{{"ink", base + ".ink.json"},
                     {"manifest", base + ".manifest.json"}}
                   .dump()
            << std::endl;
  return absl::OkStatus();
}

struct ServeArgs {
  std::string config;
  std::string store;
  std::string host;
  std::optional<int> port;
  std::optional<int> http_port;
};

absl::Status Serve(const ServeArgs& a) {
  INKASSESS_ASSIGN_OR_RETURN(ServiceConfig config, Config(a.config));
  if (!a.store.empty()) config.store_root = a.store;
  if (!a.host.empty()) config.host = a.host;
  if (a.port.has_value()) config.port = *a.port;
  if (a.http_port.has_value()) config.http_port = *a.http_port;
  INKASSESS_RETURN_IF_ERROR(ValidateConfig(config));

  // Block the stop signals before any thread starts so that only sigwait
  // below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionService service(config);
  INKASSESS_RETURN_IF_ERROR(service.Start());
  std::cout << ojson{{"event", "listening"},
                     {"host", config.host},
                     {"port", service.port()},
                     {"http_port", service.http_port()},
                     {"store_root", config.store_root},
                     {"engine_version", kEngineVersion}}
                   .dump()
            << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  service.Stop();
  std::cout << ojson{{"event", "stopped"}, {"signal", received}}.dump()
            << std::endl;
  return absl::OkStatus();
}

struct ReplayArgs {
  std::string session_id;
  double speed = 1;
  std::optional<Micros> from_t;
  std::optional<Micros> to_t;
  std::string config;
  std::string store;
};

absl::Status Replay(const ReplayArgs& a) {
  INKASSESS_ASSIGN_OR_RETURN(ServiceConfig config, Config(a.config));
  SessionStore store(a.store.empty() ? config.store_root : a.store);
  INKASSESS_ASSIGN_OR_RETURN(std::string raw,
                             store.ReadFile(a.session_id, kRawLogFile));
  std::vector<RawSample> samples;
  int line_number = 0;
  size_t pos = 0;
  while (pos < raw.size()) {
    size_t end = raw.find('\n', pos);
    if (end == std::string::npos) end = raw.size();
    std::string_view line(raw.data() + pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.empty()) continue;
    absl::StatusOr<Message> m = ParseMessage(line);
    if (!m.ok()) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat("raw log line ", line_number, ": ",
                                    std::string(m.status().message())));
    }
    if (m->type != MessageType::kSamples) continue;
    for (const nlohmann::json& s : m->body["samples"]) {
      INKASSESS_ASSIGN_OR_RETURN(RawSample sample, SampleFromJson(s));
      samples.push_back(sample);
    }
  }
  INKASSESS_ASSIGN_OR_RETURN(std::vector<ReplayStep> plan,
                             PlanReplay(samples, a.speed, a.from_t, a.to_t));
  size_t index = 0;
  size_t sent = RunReplay(plan, [&](const ReplayStep& step) {
    ojson e = NewMessage(MessageType::kReplayEvent, a.session_id);
    e["index"] = index++;
    e["offset_us"] = step.offset_us;
    e["t"] = step.sample.t;
    e["sample"] = SampleToJson(step.sample);
    std::cout << e.dump() << '\n' << std::flush;
  });
  ojson done = NewMessage(MessageType::kReplayEvent, a.session_id);
  done["done"] = true;
  done["count"] = sent;
  std::cout << done.dump() << std::endl;
  return absl::OkStatus();
}

struct RebuildArgs {
  std::string session_dir;
  std::string out;
  bool check = false;
};

// Set when `rebuild --check` finds a difference, to report it distinctly.
constexpr std::string_view kMismatch = "ArtifactMismatch";

absl::Status Rebuild(const RebuildArgs& a, std::string& mismatch) {
  fs::path dir(a.session_dir);
  INKASSESS_ASSIGN_OR_RETURN(std::string raw,
                             ReadTextFile((dir / kRawLogFile).string()));
  INKASSESS_ASSIGN_OR_RETURN(SessionArtifacts artifacts,
                             RebuildFromRawLog(raw));
  if (a.check) {
    ojson report = ojson::object();
    std::vector<std::string> differing;
    for (auto [name, text] :
         {std::pair<const char*, const std::string*>{kDerivedFile,
                                                     &artifacts.derived_json},
          {kGraphFile, &artifacts.graph_nt}}) {
      absl::StatusOr<std::string> stored = ReadTextFile((dir / name).string());
      bool same = stored.ok() && *stored == *text;
      report[name] = same ? "identical" : (stored.ok() ? "differs" : "missing");
      if (!same) differing.push_back(name);
    }
    std::cout << report.dump() << std::endl;
    if (!differing.empty()) {
      mismatch = absl::StrCat("rebuilt artifacts differ from the store: ",
                              differing.front(),
                              differing.size() > 1 ? " and more" : "");
    }
    return absl::OkStatus();
  }
  fs::path out = a.out.empty() ? dir : fs::path(a.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  INKASSESS_RETURN_IF_ERROR(
      WriteFileAtomic((out / kGraphFile).string(), artifacts.graph_nt));
  INKASSESS_RETURN_IF_ERROR(
      WriteFileAtomic((out / kDerivedFile).string(), artifacts.derived_json));
  std::cout << ojson{{"derived", (out / kDerivedFile).string()},
                     {"graph", (out / kGraphFile).string()}}
                   .dump()
            << std::endl;
  return absl::OkStatus();
}

struct TemplateArgs {
  std::string test_id;
  std::string out;
};

absl::Status Template(const TemplateArgs& a) {
  INKASSESS_ASSIGN_OR_RETURN(TestTemplate tmpl, DefaultTemplate(a.test_id));
  return Output(a.out, WriteTemplateJson(tmpl));
}

void PrintError(std::string_view kind, std::string_view message) {
  ojson e = {{"type", "error"},
             {"kind", std::string(kind)},
             {"message", std::string(message)}};
  std::cerr << e.dump() << std::endl;
}

int Run(int argc, char** argv) {
  CLI::App app("Digital ink analysis, scoring and session service",
               "inkassess");
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  std::function<absl::Status()> action;
  std::string mismatch;

  AnalyzeArgs analyze;
  CLI::App* c = app.add_subcommand("analyze", "Feature matrix for an ink file");
  c->add_option("ink", analyze.input, "ink-json file")->required();
  c->add_option("--features", analyze.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--level", analyze.level, "Feature level")
      ->check(CLI::IsMember({"stroke", "gap", "document"}));
  c->add_option("--out,-o", analyze.out, "Output file (default stdout)");
  c->add_option("--config", analyze.config, "Configuration file");
  c->callback([&] { action = [&] { return Analyze(analyze); }; });

  ScoreArgs score;
  c = app.add_subcommand("score", "Score an ink file against a test layout");
  c->add_option("ink", score.input, "ink-json file")->required();
  c->add_option("--template", score.tmpl,
                "Template file (default: the test's built-in layout)");
  c->add_flag("--summary", score.summary,
              "Print summative statistics instead of the bare result");
  c->add_option("--out,-o", score.out, "Output file (default stdout)");
  c->add_option("--config", score.config, "Configuration file");
  c->callback([&] { action = [&] { return Score(score); }; });

  SynthArgs synth;
  SynthParams& p = synth.params;
  c = app.add_subcommand("synth", "Generate a synthetic session");
  c->add_option("test_id", synth.test_id, "Registry test id")->required();
  c->add_option("--seed", synth.seed, "Random seed");
  c->add_option("--out", synth.out, "Output directory");
  c->add_option("--session-id", synth.session_id,
                "Session id (default <test_id>-<seed>)");
  c->add_option("--source", synth.source, "digital-paper or tablet-stylus");
  c->add_option("--speed", p.style.speed_mm_s, "Pen speed, mm/s");
  c->add_option("--tremor", p.style.tremor_amplitude_mm,
                "Tremor amplitude, mm");
  c->add_option("--tremor-freq", p.style.tremor_freq_hz, "Tremor frequency, Hz");
  c->add_option("--jitter", p.style.jitter_sigma_mm, "Jitter sigma, mm");
  c->add_option("--rate", p.style.rate_hz, "Sample rate, Hz");
  c->add_option("--time", p.target_time, "Clock target time HH:MM");
  c->add_flag("!--no-hands", p.draw_hands, "Leave out the clock hands");
  c->add_flag("--preprinted", p.preprinted_contour, "Clock contour preprinted");
  c->add_option("--trail-nodes", p.trail_nodes, "Trail node count");
  c->add_option("--trail-errors", p.trail_errors, "Injected trail errors");
  c->add_option("--pentagons", p.pentagon_layout,
                "interlocking, disjoint or single");
  c->add_flag("--random-subsets", p.random_subsets,
              "Cross or fill a seeded random subset");
  c->add_option("--long-pause", p.long_pause_s, "Injected pause, s");
  c->add_option("--long-pause-group", p.long_pause_before_group,
                "Group the pause precedes");
  c->add_flag("--correction", p.correction, "Re-trace one stroke at the end");
  c->add_option("--correction-group", p.correction_group,
                "Group whose first stroke is re-traced");
  c->callback([&] { action = [&] { return Synth(synth); }; });

  ServeArgs serve;
  c = app.add_subcommand("serve", "Run the session service until signaled");
  c->add_option("--config", serve.config, "Configuration file");
  c->add_option("--store", serve.store, "Store root");
  c->add_option("--host", serve.host, "Listen address");
  c->add_option("--port", serve.port, "NDJSON port (0 picks one)");
  c->add_option("--http-port", serve.http_port, "HTTP port (0 picks one)");
  c->callback([&] { action = [&] { return Serve(serve); }; });

  ReplayArgs replay;
  c = app.add_subcommand("replay", "Print a stored session's samples in time");
  c->add_option("session_id", replay.session_id, "Session id")->required();
  c->add_option("--speed", replay.speed, "Playback speed factor")->required();
  c->add_option("--from", replay.from_t, "First timestamp, us (inclusive)");
  c->add_option("--to", replay.to_t, "Last timestamp, us (inclusive)");
  c->add_option("--config", replay.config, "Configuration file");
  c->add_option("--store", replay.store, "Store root");
  c->callback([&] { action = [&] { return Replay(replay); }; });

  RebuildArgs rebuild;
  c = app.add_subcommand("rebuild",
                         "Regenerate derived.json and graph.nt from raw.jsonl");
  c->add_option("session_dir", rebuild.session_dir, "Session directory")
      ->required();
  c->add_flag("--check", rebuild.check,
              "Compare with the stored artifacts instead of writing");
  c->add_option("--out", rebuild.out, "Output directory (default session_dir)");
  c->callback([&] { action = [&] { return Rebuild(rebuild, mismatch); }; });

  TemplateArgs tmpl;
  c = app.add_subcommand("template", "Print a test's built-in layout");
  c->add_option("test_id", tmpl.test_id, "Registry test id")->required();
  c->add_option("--out,-o", tmpl.out, "Output file (default stdout)");
  c->callback([&] { action = [&] { return Template(tmpl); }; });

  c = app.add_subcommand("registry", "Print the test registry");
  c->callback([&] {
    action = [] { return Output("", RegistryToJson().dump(2) + "\n"); };
  });

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) ==
                                          nullptr) {
    std::cerr << "unknown subcommand '" << argv[1] << "'\n" << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return 2;
  }

  absl::Status status = action();
  if (!status.ok()) {
    std::optional<ErrorKind> kind = ErrorKindOf(status);
    PrintError(kind.has_value() ? ErrorKindName(*kind) : "Internal",
               ErrorDetail(status));
    return 1;
  }
  if (!mismatch.empty()) {
    PrintError(kMismatch, mismatch);
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace inkassess

int main(int argc, char** argv) { return inkassess::Run(argc, argv); }
