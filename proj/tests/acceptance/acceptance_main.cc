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

// Acceptance suite. Runs each criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is 0 only when all pass.
//
//   acceptance [criterion-name ...]   runs only the named criteria

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "inkassess/battery/layouts.h"
#include "inkassess/battery/registry.h"
#include "inkassess/battery/scoring.h"
#include "inkassess/battery/template.h"
#include "inkassess/features/session_features.h"
#include "inkassess/features/stroke_features.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/ink/segment.h"
#include "inkassess/recognizer/classifier.h"
#include "inkassess/recognizer/grouping.h"
#include "inkassess/service/client.h"
#include "inkassess/service/pipeline.h"
#include "inkassess/service/server.h"
#include "inkassess/service/store.h"
#include "inkassess/synth/session_synth.h"
#include "inkassess/status.h"
#include "inkassess/synth/stroke_synth.h"

namespace inkassess {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

const std::vector<std::string> kTests = {"AKT",  "CDT",  "CERAD", "DemTect",
                                         "MMSE", "MoCA", "ROCF",  "TMT"};

std::string TempDir(std::string_view name) {
  std::string dir = (fs::temp_directory_path() /
                     absl::StrCat("inkassess_acceptance_", ::getpid(), "_",
                                  std::string(name)))
                        .string();
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool RelEqual(double a, double b, double rel) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= rel * std::abs(b) || std::abs(a - b) <= 1e-12;
}

InkSession MustBuild(const InkDocument& doc) {
  absl::StatusOr<InkSession> s = BuildSession(doc.info, doc.samples);
  if (!s.ok()) {
    std::cerr << "BuildSession failed: " << s.status() << "\n";
    std::exit(3);
  }
  return *std::move(s);
}

SynthSession MustGen(std::string_view test_id, const SynthParams& p,
                     uint64_t seed) {
  absl::StatusOr<SynthSession> s = GenTestSession(test_id, p, seed);
  if (!s.ok()) {
    std::cerr << "GenTestSession failed: " << s.status() << "\n";
    std::exit(3);
  }
  return *std::move(s);
}

// ---------------------------------------------------------------------------
// Published test table, restated as data.

constexpr char kTable1[] =
    "AKT - Age-Concentration\t15 min\t100%\tcross-out\n"
    "CDT - Clock Drawing Test\t2-5 min\t100%\tclock, digits, lines\n"
    "CERAD - Neuropsychological Battery\t30-45 min\t20%\tpentagrams, circle, "
    "diamond, rectangles, cubes\n"
    "DemTect - Dementia Detection\t6-8 min\t20%\tnumbers, words\n"
    "MMSE - Mini-Mental State Examination\t5-10 min\t9%\tpentagrams\n"
    "MoCA - Montreal Cognitive Assessment\t10 min\t17%\tclock, digits, lines\n"
    "ROCF - Rey-Osterrieth\t15 min\t100%\tcircles, rectangles, triangles, "
    "lines\n"
    "TMT - Trail Making Test\t3-5 min\t100%\tlines\n";

Outcome TableFidelity() {
  std::vector<std::string> rows = absl::StrSplit(kTable1, '\n',
                                                 absl::SkipEmpty());
  const std::vector<TestDefinition>& reg = Registry();
  if (reg.size() != rows.size()) {
    return {false, absl::StrCat("registry has ", reg.size(), " tests")};
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> cols = absl::StrSplit(rows[i], '\t');
    std::vector<std::string> name = absl::StrSplit(cols[0], " - ");
    int pct = std::stoi(cols[2]);
    std::vector<std::string> symbols = absl::StrSplit(cols[3], ", ");
    const TestDefinition& d = reg[i];
    if (d.test_id != name[0] || d.full_name != name[1] ||
        d.approx_time != cols[1] || d.pen_input_pct != pct ||
        d.symbols != symbols) {
      return {false, absl::StrCat("row ", i + 1, " (", name[0],
                                  ") differs from the registry")};
    }
    absl::StatusOr<TestDefinition> lookup = RegistryLookup(name[0]);
    if (!lookup.ok() || lookup->test_id != name[0]) {
      return {false, absl::StrCat("lookup of ", name[0], " failed")};
    }
  }
  return {true, "8/8 rows match"};
}

// ---------------------------------------------------------------------------
// Segmentation round trip on fuzzed contact patterns.

Outcome SegmentationRoundTrip() {
  std::mt19937_64 rng(20260101);
  int failures = 0;
  std::string first_failure;
  size_t total_samples = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> len(0, 400);
    std::uniform_real_distribution<double> unit(0, 1);
    int n = len(rng);
    double flip = 0.02 + 0.5 * unit(rng);  // contact switch probability
    double dup = 0.1 * unit(rng);          // repeated timestamp probability
    std::vector<RawSample> samples;
    Micros t = std::uniform_int_distribution<Micros>(0, 1000000)(rng);
    bool contact = unit(rng) < 0.5;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && unit(rng) >= dup) {
        t += std::uniform_int_distribution<Micros>(1, 40000)(rng);
      }
      if (unit(rng) < flip) contact = !contact;
      double p = contact ? 0.05 + 0.95 * unit(rng) : 0.0;
      samples.push_back({t, 200 * unit(rng), 280 * unit(rng), p, contact});
    }
    total_samples += samples.size();

    // Oracle: the stream with each timestamp run collapsed to its last
    // sample, and its maximal contact runs.
    std::vector<RawSample> dedup;
    for (const RawSample& s : samples) {
      if (!dedup.empty() && dedup.back().t == s.t) {
        dedup.back() = s;
      } else {
        dedup.push_back(s);
      }
    }
    std::vector<std::vector<RawSample>> runs;
    size_t hover = 0;
    for (size_t i = 0; i < dedup.size(); ++i) {
      if (!dedup[i].contact) {
        ++hover;
        continue;
      }
      if (i == 0 || !dedup[i - 1].contact) runs.emplace_back();
      runs.back().push_back(dedup[i]);
    }

    std::string why;
    SessionInfo info{"fuzz", "TMT", "", {}, InputSource::kTabletStylus};
    absl::StatusOr<InkSession> session = BuildSession(info, samples);
    if (!session.ok()) {
      why = session.status().ToString();
    } else if (FlattenSession(*session) != dedup) {
      why = "reconstruction differs from the deduplicated stream";
    } else if (session->strokes.size() != runs.size()) {
      why = "stroke count differs from contact runs";
    } else {
      size_t gap_hover = 0;
      for (size_t k = 0; k < runs.size() && why.empty(); ++k) {
        if (session->strokes[k].samples != runs[k] ||
            session->strokes[k].index != static_cast<int>(k)) {
          why = absl::StrCat("stroke ", k, " is not the contact run");
        }
      }
      int interior = 0;
      for (const InAirGap& g : session->gaps) {
        gap_hover += g.hover_samples.size();
        interior += g.IsInterior() ? 1 : 0;
        for (const RawSample& h : g.hover_samples) {
          if (h.contact || h.t < g.start_t || h.t > g.end_t) {
            why = "gap holds a sample outside it";
          }
        }
        if (g.IsInterior() &&
            (g.start_t != session->strokes[*g.prev_stroke].EndT() ||
             g.end_t != session->strokes[*g.next_stroke].StartT())) {
          why = "interior gap does not span its strokes";
        }
      }
      if (why.empty() && gap_hover != hover) why = "hover samples lost";
      if (why.empty() && !runs.empty() &&
          interior != static_cast<int>(runs.size()) - 1) {
        why = "interior gap count is not strokes - 1";
      }
    }
    if (!why.empty()) {
      if (failures++ == 0) first_failure = absl::StrCat("trial ", trial, ": ", why);
    }
  }
  if (failures > 0) {
    return {false, absl::StrCat(failures, "/1000 failed; first: ",
                                first_failure)};
  }
  return {true, absl::StrCat("1000/1000 streams (", total_samples,
                             " samples) partition and reconstruct")};
}

// ---------------------------------------------------------------------------
// Streaming features against a batch brute-force oracle.

SynthParams RandomStyle(std::mt19937_64& rng, const std::string& id) {
  std::uniform_real_distribution<double> unit(0, 1);
  SynthParams p;
  p.session_id = id;
  p.style.speed_mm_s = 40 + 50 * unit(rng);
  p.style.tremor_amplitude_mm = 0.3 * unit(rng);
  p.style.tremor_freq_hz = 4 + 6 * unit(rng);
  p.style.jitter_sigma_mm = 0.1 * unit(rng);
  p.random_subsets = true;
  if (unit(rng) < 0.3) {
    p.long_pause_s = 3.5 + 3 * unit(rng);
    p.long_pause_before_group = 2;
  }
  p.source = unit(rng) < 0.5 ? InputSource::kDigitalPaper
                             : InputSource::kTabletStylus;
  return p;
}

Outcome FeatureOracle() {
  std::mt19937_64 rng(77);
  int checked_values = 0;
  for (int i = 0; i < 100; ++i) {
    const std::string& test = kTests[i % kTests.size()];
    std::string id = absl::StrCat("oracle-", i);
    SynthSession synth = MustGen(test, RandomStyle(rng, id), 1000 + i);
    const InkDocument& doc = synth.document;
    if (doc.samples.empty()) continue;
    auto fail = [&](const std::string& what) {
      return Outcome{false, absl::StrCat(test, " seed ", 1000 + i, ": ",
                                         what)};
    };

    // Streaming route: the live pipeline fed in random batch sizes, plus a
    // bare segmenter and accumulator for the integer totals.
    nlohmann::json start;
    SessionInfoToJson(doc.info, start);
    auto pipeline = SessionPipeline::Start(start, {});
    if (!pipeline.ok()) return fail(pipeline.status().ToString());
    const auto drop = [](nlohmann::ordered_json) {};
    std::uniform_int_distribution<size_t> batch_size(1, 64);
    for (size_t k = 0; k < doc.samples.size();) {
      size_t n = std::min(batch_size(rng), doc.samples.size() - k);
      std::vector<RawSample> part(doc.samples.begin() + k,
                                  doc.samples.begin() + k + n);
      (*pipeline)->AddSamples(part, std::nullopt, drop);
      k += n;
    }
    (*pipeline)->End(drop);

    StreamSegmenter segmenter;
    DocumentAccumulator acc({}, id);
    StreamSegmenter::Output out;
    auto drain = [&] {
      for (const InAirGap& g : out.completed_gaps) acc.AddGap(g);
      for (const Stroke& s : out.completed_strokes) {
        acc.AddStroke(s, StrokeFeatures(s, id));
      }
      out.completed_gaps.clear();
      out.completed_strokes.clear();
    };
    for (const RawSample& s : doc.samples) {
      if (!segmenter.Push(s, out).ok()) return fail("segmenter rejected");
      drain();
    }
    segmenter.Finish(out);
    drain();

    // Batch route.
    InkSession session = MustBuild(doc);
    SessionFeatureSet batch = SessionFeatures(session);
    const std::vector<FeatureVector>& streamed =
        (*pipeline)->stroke_features();
    if (streamed.size() != batch.strokes.size()) {
      return fail("stroke count differs");
    }
    for (size_t s = 0; s < streamed.size(); ++s) {
      for (size_t k = 0; k < streamed[s].size(); ++k) {
        ++checked_values;
        if (!RelEqual(streamed[s].at(k), batch.strokes[s].at(k), 1e-9)) {
          return fail(absl::StrCat("stroke ", s, " ", streamed[s].ids()[k]));
        }
      }
    }
    FeatureVector live = (*pipeline)->document();
    FeatureVector bare = acc.Snapshot();
    for (size_t k = 0; k < live.size(); ++k) {
      checked_values += 2;
      if (!RelEqual(live.at(k), batch.document.at(k), 1e-9) ||
          !RelEqual(bare.at(k), batch.document.at(k), 1e-9)) {
        return fail(absl::StrCat("document ", live.ids()[k]));
      }
    }

    // Brute-force sums straight from the samples and the partition.
    Micros on_paper = 0;
    Micros in_air = 0;
    double path = 0;
    for (const Stroke& s : session.strokes) {
      on_paper += s.samples.back().t - s.samples.front().t;
      double len = 0;
      for (size_t k = 1; k < s.samples.size(); ++k) {
        len += std::hypot(s.samples[k].x - s.samples[k - 1].x,
                          s.samples[k].y - s.samples[k - 1].y);
      }
      path += len;
      const FeatureVector& f = streamed[s.index];
      if (!RelEqual(f.Get("path_length_mm"), len, 1e-9) ||
          f.Get("sample_count") != static_cast<double>(s.samples.size()) ||
          !RelEqual(f.Get("duration_s"),
                    (s.samples.back().t - s.samples.front().t) / 1e6, 1e-9)) {
        return fail(absl::StrCat("stroke ", s.index, " brute-force sums"));
      }
    }
    for (const InAirGap& g : session.gaps) in_air += g.end_t - g.start_t;
    Micros span = doc.samples.back().t - doc.samples.front().t;
    if (on_paper + in_air != span) {
      return fail(absl::StrCat("partition: ", on_paper, " + ", in_air,
                               " != ", span, " us"));
    }
    if (acc.on_paper_us() != on_paper || acc.in_air_us() != in_air ||
        acc.span_us() != span ||
        acc.on_paper_us() + acc.in_air_us() != acc.span_us()) {
      return fail("streaming integer totals break conservation");
    }
    const FeatureVector& d = batch.document;
    if (!RelEqual(live.Get("total_path_mm"), path, 1e-9) ||
        !RelEqual(live.Get("total_on_paper_s"), on_paper / 1e6, 1e-9) ||
        !RelEqual(live.Get("total_in_air_s"), in_air / 1e6, 1e-9) ||
        !RelEqual(live.Get("session_span_s"), span / 1e6, 1e-9) ||
        d.Get("stroke_count") != static_cast<double>(session.strokes.size()) ||
        d.Get("gap_count") != static_cast<double>(session.gaps.size())) {
      return fail("document totals differ from brute-force sums");
    }
  }
  return {true, absl::StrCat("100 sessions, ", checked_values,
                             " values within 1e-9; on_paper + in_air == "
                             "span exactly")};
}

// ---------------------------------------------------------------------------
// Tremor amplitude sweep.

Outcome TremorSweep() {
  std::string detail;
  double previous = -1;
  bool pass = true;
  for (double amp : {0.0, 0.1, 0.2, 0.4}) {
    SynthSpec spec;
    spec.path = LinePath({30, 100}, {110, 100});
    spec.speed_mm_s = 40;
    spec.tremor_amplitude_mm = amp;
    spec.tremor_freq_hz = 8;
    spec.seed = 5;
    absl::StatusOr<std::vector<RawSample>> samples = GenStroke(spec);
    if (!samples.ok()) return {false, samples.status().ToString()};
    Stroke stroke{0, *samples};
    TremorResult r = TremorIndex(stroke);
    absl::StrAppend(&detail, detail.empty() ? "" : "; ", "A=", amp,
                    ": index ", r.rms_mm, " mm");
    if (amp == 0) {
      pass &= r.rms_mm < 1e-6;
    } else {
      absl::StrAppend(&detail, " @ ", r.dominant_freq_hz, " Hz");
      pass &= std::abs(r.dominant_freq_hz - 8) <= 1;
    }
    pass &= r.rms_mm > previous;
    previous = r.rms_mm;
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// Recognizer agreement.

Outcome RecognizerAccuracy() {
  const std::vector<Shape> shapes = {Shape::kLine,      Shape::kCircle,
                                     Shape::kTriangle,  Shape::kRectangle,
                                     Shape::kDiamond,   Shape::kPentagon,
                                     Shape::kCrossOut};
  auto run = [&](double tremor, std::string& misses) {
    int agree = 0;
    std::map<std::string, int> wrong;
    for (int i = 0; i < 500; ++i) {
      Shape shape = shapes[i % shapes.size()];
      SynthParams p;
      p.style.speed_mm_s = 70;
      p.style.jitter_sigma_mm = 0.1;
      p.style.tremor_amplitude_mm = tremor;
      absl::StatusOr<SynthSession> synth =
          GenShapeSession(shape, p, 900000 + i);
      if (!synth.ok()) continue;
      InkSession s = MustBuild(synth->document);
      std::vector<StrokeGroup> groups = GroupStrokes(s);
      std::string got =
          groups.size() == 1
              ? std::string(ShapeName(ClassifyGroup(groups[0], s).label))
              : absl::StrCat(groups.size(), " groups");
      if (got == synth->manifest.group_labels[0]) {
        ++agree;
      } else {
        ++wrong[absl::StrCat(synth->manifest.group_labels[0], "->", got)];
      }
    }
    for (const auto& [k, v] : wrong) {
      absl::StrAppend(&misses, misses.empty() ? "" : ",", k, "x", v);
    }
    return agree;
  };
  std::string clean_misses;
  std::string tremor_misses;
  int clean = run(0.0, clean_misses);
  int tremor = run(0.3, tremor_misses);
  std::string detail =
      absl::StrCat("clean ", clean, "/500 (", clean / 5.0, "%, need 95%)",
                   "; tremor 0.3 mm ", tremor, "/500 (", tremor / 5.0,
                   "%, need 80%)");
  if (!clean_misses.empty()) absl::StrAppend(&detail, "; clean misses ",
                                             clean_misses);
  return {clean >= 475 && tremor >= 400, detail};
}

// ---------------------------------------------------------------------------
// Scoring goldens.

Outcome ScoringGoldens() {
  int cases = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SynthSession synth = MustGen("CDT", {}, seed);
    absl::StatusOr<CdtResult> r = ScoreCdt(MustBuild(synth.document),
                                           synth.tmpl);
    ++cases;
    if (!r.ok() || r->total != 6) {
      return {false, absl::StrCat("CDT seed ", seed, " total ",
                                  r.ok() ? r->total : -1)};
    }
  }
  for (int k : {0, 1, 2, 5}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      SynthParams p;
      p.trail_errors = k;
      SynthSession synth = MustGen("TMT", p, seed);
      absl::StatusOr<TmtResult> r =
          ScoreTmt(MustBuild(synth.document), synth.tmpl);
      ++cases;
      if (!r.ok() || r->sequencing_errors != k) {
        return {false, absl::StrCat("TMT k=", k, " seed ", seed, " reports ",
                                    r.ok() ? r->sequencing_errors : -1)};
      }
    }
  }
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SynthParams p;
    p.random_subsets = true;
    SynthSession synth = MustGen("AKT", p, seed);
    absl::StatusOr<AktResult> r = ScoreAkt(MustBuild(synth.document),
                                           synth.tmpl);
    ++cases;
    auto sorted = [](std::vector<std::string> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    if (!r.ok() ||
        sorted(r->hits) != sorted(synth.manifest.akt_crossed_targets) ||
        sorted(r->false_alarms) !=
            sorted(synth.manifest.akt_crossed_distractors)) {
      return {false, absl::StrCat("AKT seed ", seed, " sets differ")};
    }
  }
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SynthSession synth = MustGen("MMSE", {}, seed);
    absl::StatusOr<PentagonResult> r =
        CheckPentagonCopy(MustBuild(synth.document), synth.tmpl);
    ++cases;
    if (!r.ok() || !r->two_pentagons || !r->intersect ||
        !r->intersection_is_quadrilateral) {
      return {false, absl::StrCat("MMSE seed ", seed, " pentagon checks")};
    }
  }
  // Analytic construction: two regular pentagons, apex up and apex down,
  // centers 1.4 R apart, drawn as two strokes.
  {
    absl::StatusOr<TestTemplate> tmpl = DefaultTemplate("MMSE");
    if (!tmpl.ok()) return {false, tmpl.status().ToString()};
    const Region* canvas = nullptr;
    for (const Region& r : tmpl->regions) {
      if (r.expect == "interlocking-pentagons") canvas = &r;
    }
    if (canvas == nullptr) return {false, "MMSE has no pentagon canvas"};
    Point c = canvas->bbox.Center();
    double radius =
        std::min(canvas->bbox.Width(), canvas->bbox.Height()) / 5;
    std::vector<RawSample> samples;
    Micros start = 0;
    for (auto [dx, first_deg] : {std::pair{-0.7, 0.0}, {0.7, 180.0}}) {
      SynthSpec spec;
      spec.path = ClosedPath(RegularPolygon({c.x + dx * radius, c.y}, radius,
                                            5, first_deg));
      spec.start_t = start;
      absl::StatusOr<std::vector<RawSample>> stroke = GenStroke(spec);
      if (!stroke.ok()) return {false, stroke.status().ToString()};
      samples.insert(samples.end(), stroke->begin(), stroke->end());
      RawSample up = samples.back();
      up.t += 5000;
      up.contact = false;
      up.pressure = 0;
      samples.push_back(up);
      start = up.t + 1500000;
    }
    SessionInfo info{"pentagons", "MMSE", "", tmpl->page,
                     InputSource::kDigitalPaper};
    absl::StatusOr<InkSession> session = BuildSession(info, samples);
    if (!session.ok()) return {false, session.status().ToString()};
    absl::StatusOr<PentagonResult> r = CheckPentagonCopy(*session, *tmpl);
    ++cases;
    if (!r.ok() || !r->two_pentagons || !r->intersect ||
        !r->intersection_is_quadrilateral) {
      return {false, "analytic interlocking pentagons fail a check"};
    }
  }
  return {true, absl::StrCat(cases, " golden cases: CDT 6/6, TMT k errors, ",
                             "AKT sets, pentagon checks")};
}

// ---------------------------------------------------------------------------
// Running service helpers.

struct Service {
  std::string root;
  std::unique_ptr<SessionService> service;
};

absl::StatusOr<Service> StartService(std::string_view name) {
  Service s;
  s.root = TempDir(name);
  ServiceConfig config;
  config.store_root = s.root;
  config.port = 0;
  config.http_port = 0;
  s.service = std::make_unique<SessionService>(config);
  absl::Status status = s.service->Start();
  if (!status.ok()) return status;
  return s;
}

absl::StatusOr<std::unique_ptr<NdjsonClient>> Connect(const Service& s) {
  INKASSESS_ASSIGN_OR_RETURN(std::unique_ptr<NdjsonClient> c,
                             NdjsonClient::Connect("127.0.0.1",
                                                   s.service->port()));
  INKASSESS_ASSIGN_OR_RETURN(json hello, c->Hello());
  if (hello.value("type", "") != "hello") {
    return MakeError(ErrorKind::kProtocolError, hello.dump());
  }
  return c;
}

int RunProcess(const std::string& command) {
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------
// Record/replay determinism.

Outcome RecordReplayDeterminism() {
  absl::StatusOr<Service> svc = StartService("record");
  if (!svc.ok()) return {false, svc.status().ToString()};
  absl::StatusOr<std::unique_ptr<NdjsonClient>> client = Connect(*svc);
  if (!client.ok()) return {false, client.status().ToString()};
  std::mt19937_64 rng(2024);
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    const std::string& test = kTests[i % kTests.size()];
    std::string id = absl::StrCat("rr-", i, "-", test);
    SynthSession synth = MustGen(test, RandomStyle(rng, id), 500 + i);
    IngestOptions options;
    options.batch_size = std::uniform_int_distribution<int>(1, 32)(rng);
    absl::StatusOr<std::vector<json>> got =
        IngestDocument(**client, synth.document, options);
    if (!got.ok()) return {false, got.status().ToString()};
    if (got->empty() || got->back().value("type", "") != "session_summary") {
      return {false, absl::StrCat(id, ": no session_summary")};
    }
    ids.push_back(id);
  }
  svc->service->Stop();

  const SessionStore& store = svc->service->store();
  for (const std::string& id : ids) {
    absl::StatusOr<std::string> raw = store.ReadFile(id, kRawLogFile);
    if (!raw.ok()) return {false, raw.status().ToString()};
    absl::StatusOr<SessionArtifacts> again = RebuildFromRawLog(*raw);
    if (!again.ok()) return {false, again.status().ToString()};
    if (again->derived_json != *store.ReadFile(id, kDerivedFile) ||
        again->graph_nt != *store.ReadFile(id, kGraphFile)) {
      return {false, absl::StrCat(id, ": in-process rebuild differs")};
    }
  }

  // Two separate CLI processes per session.
  std::string runs = TempDir("record_runs");
  for (const std::string& id : ids) {
    std::string dir = store.SessionDir(id);
    for (int run : {1, 2}) {
      std::string out = absl::StrCat(runs, "/", run, "/", id);
      int code = RunProcess(absl::StrCat(INKASSESS_CLI, " rebuild ", dir,
                                         " --out ", out, " >/dev/null"));
      if (code != 0) {
        return {false, absl::StrCat(id, ": rebuild run ", run, " exit ",
                                    code)};
      }
    }
    std::string g1 = Slurp(absl::StrCat(runs, "/1/", id, "/graph.nt"));
    std::string g2 = Slurp(absl::StrCat(runs, "/2/", id, "/graph.nt"));
    std::string d1 = Slurp(absl::StrCat(runs, "/1/", id, "/derived.json"));
    std::string d2 = Slurp(absl::StrCat(runs, "/2/", id, "/derived.json"));
    if (g1.empty() || g1 != g2 || g1 != *store.ReadFile(id, kGraphFile) ||
        d1 != d2 || d1 != *store.ReadFile(id, kDerivedFile)) {
      return {false, absl::StrCat(id, ": process runs differ")};
    }
  }
  fs::remove_all(runs);
  fs::remove_all(svc->root);
  return {true, "20/20 sessions rebuild byte-identically in-process and in "
                "two CLI processes"};
}

// ---------------------------------------------------------------------------
// Replay pacing and windows.

Outcome ReplayTiming() {
  absl::StatusOr<Service> svc = StartService("replay");
  if (!svc.ok()) return {false, svc.status().ToString()};
  absl::StatusOr<std::unique_ptr<NdjsonClient>> client = Connect(*svc);
  if (!client.ok()) return {false, client.status().ToString()};
  SynthSession synth = MustGen("CDT", {}, 3);
  synth.document.info.session_id = "replayed";
  absl::StatusOr<std::vector<json>> got =
      IngestDocument(**client, synth.document);
  if (!got.ok()) return {false, got.status().ToString()};

  const std::vector<RawSample>& all = synth.document.samples;
  std::string detail;
  double worst_ms = 0;
  struct Window {
    double speed;
    Micros from;
    Micros to;
  };
  Micros t0 = all.front().t;
  for (const Window& w : {Window{0.5, t0 + 2000000, t0 + 5000000},
                          Window{4.0, t0 + 7333333, t0 + 9000000}}) {
    std::vector<Micros> expected;
    for (const RawSample& s : all) {
      if (s.t >= w.from && s.t <= w.to) expected.push_back(s.t);
    }
    json request = {{"type", "replay_request"}, {"session_id", "replayed"},
                    {"speed", w.speed},         {"from_t", w.from},
                    {"to_t", w.to}};
    if (!(*client)->Send(request).ok()) return {false, "send failed"};
    std::vector<Micros> times;
    std::vector<double> lateness_ms;
    Clock::time_point first;
    json done;
    while (true) {
      absl::StatusOr<json> m = (*client)->Receive(std::chrono::seconds(30));
      Clock::time_point now = Clock::now();
      if (!m.ok()) return {false, m.status().ToString()};
      if ((*m)["type"] != "replay_event") return {false, m->dump()};
      if (m->value("done", false)) {
        done = *m;
        break;
      }
      if (times.empty()) first = now;
      Micros t = (*m)["t"].get<Micros>();
      Micros offset = (*m)["offset_us"].get<Micros>();
      Micros scaled = std::llround(static_cast<double>(t - expected.front()) /
                                   w.speed);
      if (offset != scaled) {
        return {false, absl::StrCat("offset ", offset, " != ", scaled)};
      }
      double elapsed_us =
          std::chrono::duration<double, std::micro>(now - first).count();
      lateness_ms.push_back((elapsed_us - offset) / 1000);
      times.push_back(t);
    }
    if (times != expected || done["count"] != expected.size()) {
      return {false, absl::StrCat("window [", w.from, ", ", w.to,
                                  "] delivered ", times.size(), " of ",
                                  expected.size(), " samples")};
    }
    double recorded = (expected.back() - expected.front()) / 1e3;
    double played = lateness_ms.back() +
                    std::llround((expected.back() - expected.front()) /
                                 w.speed) / 1e3;
    double worst = 0;
    for (double l : lateness_ms) worst = std::max(worst, std::abs(l));
    worst_ms = std::max(worst_ms, worst);
    absl::StrAppend(&detail, detail.empty() ? "" : "; ", "x", w.speed, ": ",
                    expected.size(), " events, ", recorded, " ms -> ",
                    played, " ms, worst ", worst, " ms");
  }
  svc->service->Stop();
  fs::remove_all(svc->root);
  return {worst_ms <= 10.0, detail};
}

// ---------------------------------------------------------------------------
// Live ingest latency at 200 Hz.

Outcome LiveLatency() {
  absl::StatusOr<Service> svc = StartService("latency");
  if (!svc.ok()) return {false, svc.status().ToString()};
  absl::StatusOr<std::unique_ptr<NdjsonClient>> client = Connect(*svc);
  if (!client.ok()) return {false, client.status().ToString()};
  NdjsonClient& c = **client;

  SynthSession synth = MustGen("CDT", {}, 1);
  synth.document.info.session_id = "live";
  std::vector<RawSample> samples = synth.document.samples;
  // About 15 s of writing is plenty for a stable p99.
  Micros t0 = samples.front().t;
  samples.erase(std::remove_if(samples.begin(), samples.end(),
                               [&](const RawSample& s) {
                                 return s.t - t0 > 15000000;
                               }),
                samples.end());
  nlohmann::json start;
  SessionInfoToJson(synth.document.info, start);
  start["type"] = "start_session";
  if (!c.Send(start).ok()) return {false, "send failed"};

  const size_t n = samples.size();
  std::vector<std::atomic<int64_t>> sent_ns(n + 1);
  std::vector<double> latency_ms;
  std::atomic<bool> sender_ok{true};
  std::thread sender([&] {
    Clock::time_point begin = Clock::now();
    for (size_t i = 0; i < n; ++i) {
      std::this_thread::sleep_until(
          begin + std::chrono::microseconds(samples[i].t - t0));
      nlohmann::json m = {{"type", "samples"},
                          {"session_id", "live"},
                          {"seq", i + 1}};
      m["samples"] = nlohmann::json::array({SampleToJson(samples[i])});
      std::string line = m.dump();
      sent_ns[i + 1] = Clock::now().time_since_epoch().count();
      if (!c.SendLine(line).ok()) {
        sender_ok = false;
        return;
      }
    }
    if (!c.Send({{"type", "end_session"}, {"session_id", "live"}}).ok()) {
      sender_ok = false;
    }
  });
  bool done = false;
  std::string error;
  while (!done) {
    absl::StatusOr<json> m = c.Receive(std::chrono::seconds(30));
    int64_t now = Clock::now().time_since_epoch().count();
    if (!m.ok()) {
      error = m.status().ToString();
      break;
    }
    std::string type = m->value("type", "");
    if (type == "feature_update") {
      int64_t seq = (*m)["seq"].get<int64_t>();
      latency_ms.push_back((now - sent_ns[seq].load()) / 1e6);
    } else if (type == "session_summary") {
      done = true;
    } else if (type == "error") {
      error = m->dump();
      break;
    }
  }
  sender.join();
  svc->service->Stop();
  fs::remove_all(svc->root);
  if (!error.empty() || !sender_ok) return {false, "stream failed: " + error};
  if (latency_ms.size() != n) {
    return {false, absl::StrCat(latency_ms.size(), " acks for ", n,
                                " batches")};
  }
  std::sort(latency_ms.begin(), latency_ms.end());
  auto rank = [&](double q) {
    size_t k = static_cast<size_t>(std::ceil(q * latency_ms.size()));
    return latency_ms[std::max<size_t>(k, 1) - 1];
  };
  double p50 = rank(0.50);
  double p99 = rank(0.99);
  return {p99 < 10.0,
          absl::StrCat(n, " samples at 200 Hz: p50 ", p50, " ms, p99 ", p99,
                       " ms, max ", latency_ms.back(), " ms (need p99 < 10)")};
}

}  // namespace
}  // namespace inkassess

int main(int argc, char** argv) {
  using inkassess::Criterion;
  const std::vector<Criterion> criteria = {
      {"table-fidelity", 1, inkassess::TableFidelity},
      {"segmentation-round-trip", 10, inkassess::SegmentationRoundTrip},
      {"feature-oracle", 30, inkassess::FeatureOracle},
      {"tremor-sweep", 10, inkassess::TremorSweep},
      {"recognizer-accuracy", 60, inkassess::RecognizerAccuracy},
      {"scoring-goldens", 30, inkassess::ScoringGoldens},
      {"record-replay-determinism", 60, inkassess::RecordReplayDeterminism},
      {"replay-timing", 30, inkassess::ReplayTiming},
      {"live-latency", 60, inkassess::LiveLatency},
  };
  std::set<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only.count(c.name) == 0) continue;
    ++ran;
    auto begin = std::chrono::steady_clock::now();
    inkassess::Outcome outcome = c.run();
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
            .count();
    bool in_time = seconds < c.budget_s;
    bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %-27s %6.2f s / %4.0f s  %s%s\n", pass ? "PASS" : "FAIL",
                c.name.c_str(), seconds, c.budget_s, outcome.detail.c_str(),
                in_time ? "" : "  [over time budget]");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matched\n");
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
