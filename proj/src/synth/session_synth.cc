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

#include "inkassess/synth/session_synth.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "inkassess/battery/layouts.h"
#include "inkassess/battery/registry.h"
#include "inkassess/battery/scoring.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

constexpr double kComponentPauseS = 1.2;
constexpr double kInGroupPauseS = 0.3;
constexpr double kPentagonPauseS = 1.5;
constexpr double kCorrectionDelayS = 2.5;
constexpr double kClockRadius = 40;

struct PlannedStroke {
  std::vector<Point> path;
  double pause_before_s = 0;
  int group = 0;
};

struct Plan {
  std::vector<PlannedStroke> strokes;
  std::vector<std::string> group_labels;

  int NewGroup(std::string label) {
    group_labels.push_back(std::move(label));
    return static_cast<int>(group_labels.size()) - 1;
  }
  // Single-stroke group.
  void Add(std::vector<Point> path, std::string label,
           double pause_s = kComponentPauseS) {
    int g = NewGroup(std::move(label));
    strokes.push_back({std::move(path), strokes.empty() ? 0 : pause_s, g});
  }
  void AddToGroup(std::vector<Point> path, int group,
                  double pause_s = kInGroupPauseS) {
    strokes.push_back({std::move(path), strokes.empty() ? 0 : pause_s, group});
  }
};

double Uniform(NormalSource& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.Uniform();
}

template <typename T>
void Shuffle(std::vector<T>& v, NormalSource& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.Uniform() * static_cast<double>(i));
    std::swap(v[i - 1], v[std::min(j, i - 1)]);
  }
}

std::vector<Point> Shift(std::vector<Point> pts, double dx, double dy) {
  for (Point& p : pts) {
    p.x += dx;
    p.y += dy;
  }
  return pts;
}

std::vector<Point> Rectangle(const Point& c, double w, double h,
                             double rotation_deg) {
  double rad = rotation_deg * kPi / 180.0;
  double cs = std::cos(rad);
  double sn = std::sin(rad);
  std::vector<Point> out;
  for (auto [u, v] : std::vector<std::pair<double, double>>{
           {-w / 2, -h / 2}, {w / 2, -h / 2}, {w / 2, h / 2}, {-w / 2, h / 2}}) {
    out.push_back({c.x + u * cs - v * sn, c.y + u * sn + v * cs});
  }
  return out;
}

// Top, right, bottom, left.
std::vector<Point> Rhombus(const Point& c, double half_w, double half_h,
                           double rotation_deg) {
  double rad = rotation_deg * kPi / 180.0;
  double cs = std::cos(rad);
  double sn = std::sin(rad);
  std::vector<Point> out;
  for (auto [u, v] : std::vector<std::pair<double, double>>{
           {0, -half_h}, {half_w, 0}, {0, half_h}, {-half_w, 0}}) {
    out.push_back({c.x + u * cs - v * sn, c.y + u * sn + v * cs});
  }
  return out;
}

const Region* CanvasWithExpect(const TestTemplate& t, std::string_view expect) {
  for (const Region* r : t.RegionsOfKind(RegionKind::kCanvas)) {
    if (r->expect == expect) return r;
  }
  return nullptr;
}

void PlanCube(Plan& plan, const Point& c, double side) {
  double d = side / 3;
  Point front{c.x - d / 2, c.y + d / 2};
  std::vector<Point> f = Rectangle(front, side, side, 0);
  std::vector<Point> b = Shift(f, d, -d);
  int g = plan.NewGroup(std::string(ShapeName(Shape::kComplexFigure)));
  plan.strokes.push_back(
      {ClosedPath(f), plan.strokes.empty() ? 0 : kComponentPauseS, g});
  plan.AddToGroup(ClosedPath(b), g);
  for (size_t i = 0; i < 4; ++i) plan.AddToGroup(LinePath(f[i], b[i]), g);
}

absl::Status PlanClock(Plan& plan, SynthManifest& m, const TestTemplate& tmpl,
                       const SynthParams& params) {
  const Region* canvas = nullptr;
  for (const Region* r : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (r->expect.has_value() && ParseClockTime(*r->expect)) canvas = r;
  }
  auto time = ParseClockTime(params.target_time);
  if (canvas == nullptr || !time.has_value()) {
    return MakeError(ErrorKind::kInvalidSpec, "bad clock target time");
  }
  const Point c = canvas->bbox.Center();
  const double r = kClockRadius;
  if (!params.preprinted_contour) {
    plan.Add(ArcPath(c, r, 0, 360), std::string(ShapeName(Shape::kCircle)));
  }
  for (int h = 1; h <= 12; ++h) {
    Point p = OnClock(c, 0.8 * r, 30.0 * h);
    // A small "Z" glyph stands in for the digit.
    plan.Add({{p.x - 1.5, p.y - 2}, {p.x + 1.5, p.y - 2}, {p.x - 1.5, p.y + 2},
              {p.x + 1.5, p.y + 2}},
             std::string(ShapeName(Shape::kUnrecognizedText)));
  }
  if (params.draw_hands) {
    double hour = 30.0 * (time->hour % 12) + 0.5 * time->minute;
    double minute = 6.0 * time->minute;
    plan.Add(LinePath(c, OnClock(c, 0.45 * r, hour)),
             std::string(ShapeName(Shape::kLine)));
    plan.Add(LinePath(c, OnClock(c, 0.7 * r, minute)),
             std::string(ShapeName(Shape::kLine)));
  }
  const std::string p = canvas->id + ".";
  int hands = params.draw_hands ? 1 : 0;
  m.expected[p + "contour_present"] = 1;
  m.expected[p + "contour_closed"] = 1;
  m.expected[p + "mark_count"] = 12;
  m.expected[p + "marks_well_placed"] = 1;
  m.expected[p + "hands_present"] = hands;
  m.expected[p + "hands_correct"] = hands;
  m.expected[p + "total"] = 4 + 2 * hands;
  return absl::OkStatus();
}

void PlanPentagons(Plan& plan, SynthManifest& m, const Region& canvas,
                   double radius, const std::string& layout) {
  const Point c = canvas.bbox.Center();
  const std::string label(ShapeName(Shape::kPentagon));
  if (layout == "single") {
    plan.Add(ClosedPath(RegularPolygon(c, radius, 5, 90)), label,
             kPentagonPauseS);
  } else {
    double offset = layout == "disjoint" ? 1.5 * radius : 0.7 * radius;
    // Vertices point at each other so the overlap is a quadrilateral.
    plan.Add(ClosedPath(RegularPolygon({c.x - offset, c.y}, radius, 5, 90)),
             label, kPentagonPauseS);
    plan.Add(ClosedPath(RegularPolygon({c.x + offset, c.y}, radius, 5, 270)),
             label, kPentagonPauseS);
  }
  const std::string p = canvas.id + ".";
  int two = layout != "single";
  int overlap = layout == "interlocking";
  m.expected[p + "two_pentagons"] = two;
  m.expected[p + "intersect"] = overlap;
  m.expected[p + "intersection_is_quadrilateral"] = overlap;
  m.expected[p + "checks_passed"] = two + 2 * overlap;
}

absl::Status PlanTrail(Plan& plan, SynthManifest& m, const TestTemplate& tmpl,
                       const SynthParams& params, NormalSource& rng) {
  std::vector<const Region*> nodes = tmpl.RegionsOfKind(RegionKind::kNode);
  std::sort(nodes.begin(), nodes.end(),
            [](const Region* a, const Region* b) { return *a->seq < *b->seq; });
  const int n = static_cast<int>(nodes.size());
  const int k = params.trail_errors;
  if (k < 0) return MakeError(ErrorKind::kInvalidSpec, "negative trail errors");

  // Each skipped interior node turns one transition into an error, as long
  // as no two skipped nodes are adjacent in sequence.
  std::set<int> skipped;
  if (k > 0) {
    std::vector<int> candidates;
    for (int i = 1; i + 1 < n; ++i) candidates.push_back(i);
    for (int attempt = 0; attempt < 200 && static_cast<int>(skipped.size()) < k;
         ++attempt) {
      skipped.clear();
      Shuffle(candidates, rng);
      for (int c : candidates) {
        if (static_cast<int>(skipped.size()) == k) break;
        if (!skipped.count(c - 1) && !skipped.count(c + 1)) skipped.insert(c);
      }
    }
    if (static_cast<int>(skipped.size()) < k) {
      return MakeError(ErrorKind::kInvalidSpec,
                       "too many trail errors for the node count");
    }
  }

  std::vector<Point> path;
  const Region* previous = nullptr;
  for (int i = 0; i < n; ++i) {
    if (skipped.count(i)) continue;
    const Point target = nodes[static_cast<size_t>(i)]->bbox.Center();
    if (previous != nullptr) {
      const Point from = previous->bbox.Center();
      double len = Distance(from, target);
      double px = -(target.y - from.y) / len;
      double py = (target.x - from.x) / len;
      std::vector<std::pair<double, Point>> detours;
      for (const Region* other : nodes) {
        if (other == previous || other == nodes[static_cast<size_t>(i)]) {
          continue;
        }
        Point oc = other->bbox.Center();
        double reach = other->bbox.Width() / 2 + 6;
        if (PointSegmentDistance(oc, from, target) < reach) {
          double along = (oc.x - from.x) * (target.x - from.x) +
                         (oc.y - from.y) * (target.y - from.y);
          detours.push_back({along, {oc.x + 16 * px, oc.y + 16 * py}});
        }
      }
      std::sort(detours.begin(), detours.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& d : detours) path.push_back(d.second);
    }
    path.push_back(target);
    previous = nodes[static_cast<size_t>(i)];
  }
  plan.Add(std::move(path), "");
  for (int s : skipped) m.trail_skipped.push_back(*nodes[static_cast<size_t>(s)]->seq);
  m.trail_errors = k;
  m.expected["sequencing_errors"] = k;
  m.expected["nodes_visited"] = n - k;
  m.expected["completed"] = k == 0 ? 1 : 0;
  return absl::OkStatus();
}

absl::Status PlanCrossOut(Plan& plan, SynthManifest& m,
                          const TestTemplate& tmpl, const SynthParams& params,
                          NormalSource& rng) {
  std::vector<std::string> targets;
  std::vector<std::string> distractors;
  for (const Region& r : tmpl.regions) {
    if (r.kind == RegionKind::kTarget) targets.push_back(r.id);
    if (r.kind == RegionKind::kDistractor) distractors.push_back(r.id);
  }
  std::vector<std::string> chosen;
  if (params.akt_targets.has_value()) {
    chosen = *params.akt_targets;
  } else if (params.random_subsets) {
    for (const std::string& id : targets) {
      if (rng.Uniform() < 0.5) chosen.push_back(id);
    }
  } else {
    chosen = targets;
  }
  std::set<std::string> crossed_t(chosen.begin(), chosen.end());
  std::set<std::string> crossed_d(params.akt_distractors.begin(),
                                  params.akt_distractors.end());
  for (const std::string& id : crossed_t) {
    if (std::find(targets.begin(), targets.end(), id) == targets.end()) {
      return MakeError(ErrorKind::kInvalidSpec, "not a target: " + id);
    }
  }
  for (const std::string& id : crossed_d) {
    if (std::find(distractors.begin(), distractors.end(), id) ==
        distractors.end()) {
      return MakeError(ErrorKind::kInvalidSpec, "not a distractor: " + id);
    }
  }
  // Cross in page order with a single slash through each item.
  for (const Region& r : tmpl.regions) {
    if (!crossed_t.count(r.id) && !crossed_d.count(r.id)) continue;
    plan.Add(LinePath({r.bbox.min_x - 1, r.bbox.max_y + 1},
                      {r.bbox.max_x + 1, r.bbox.min_y - 1}),
             std::string(ShapeName(Shape::kLine)), 0.4);
    (r.kind == RegionKind::kTarget ? m.akt_crossed_targets
                                   : m.akt_crossed_distractors)
        .push_back(r.id);
  }
  int hits = static_cast<int>(m.akt_crossed_targets.size());
  m.expected["hits"] = hits;
  m.expected["misses"] = static_cast<int>(targets.size()) - hits;
  m.expected["false_alarms"] =
      static_cast<int>(m.akt_crossed_distractors.size());
  return absl::OkStatus();
}

absl::Status PlanFields(Plan& plan, SynthManifest& m, const TestTemplate& tmpl,
                        const SynthParams& params, NormalSource& rng) {
  std::vector<const Region*> fields =
      tmpl.RegionsOfKind(RegionKind::kInputField);
  std::set<std::string> chosen;
  if (params.fields.has_value()) {
    chosen.insert(params.fields->begin(), params.fields->end());
    for (const std::string& id : chosen) {
      const Region* r = tmpl.FindRegion(id);
      if (r == nullptr || r->kind != RegionKind::kInputField) {
        return MakeError(ErrorKind::kInvalidSpec, "not an input field: " + id);
      }
    }
  } else {
    for (const Region* r : fields) {
      if (!params.random_subsets || rng.Uniform() < 0.5) chosen.insert(r->id);
    }
  }
  int filled = 0;
  for (const Region* r : fields) {
    bool fill = chosen.count(r->id) > 0;
    m.expected[r->id + ".has_ink"] = fill ? 1 : 0;
    if (!fill) continue;
    std::vector<Point> zigzag;
    for (int i = 0; i < 8; ++i) {
      zigzag.push_back({r->bbox.min_x + 5 + 5.0 * i,
                        i % 2 == 0 ? r->bbox.min_y + 3 : r->bbox.max_y - 3});
    }
    plan.Add(std::move(zigzag), "");
    m.fields_filled.push_back(r->id);
    ++filled;
  }
  m.expected["fields_with_ink"] = filled;
  return absl::OkStatus();
}

absl::StatusOr<SynthSession> Render(Plan plan, SynthManifest manifest,
                                    TestTemplate tmpl,
                                    const SynthParams& params, uint64_t seed) {
  if (params.long_pause_s > 0) {
    for (size_t i = 0; i < plan.strokes.size(); ++i) {
      if (plan.strokes[i].group == params.long_pause_before_group && i > 0) {
        plan.strokes[i].pause_before_s = params.long_pause_s;
        manifest.long_pauses.push_back(
            {static_cast<int>(i), params.long_pause_s});
        break;
      }
    }
  }
  if (params.correction) {
    for (size_t i = 0; i < plan.strokes.size(); ++i) {
      if (plan.strokes[i].group != params.correction_group) continue;
      PlannedStroke again = plan.strokes[i];
      again.pause_before_s = kCorrectionDelayS;
      again.group = plan.NewGroup(
          plan.group_labels[static_cast<size_t>(plan.strokes[i].group)]);
      manifest.corrections.push_back(
          {static_cast<int>(plan.strokes.size()), static_cast<int>(i)});
      plan.strokes.push_back(std::move(again));
      break;
    }
  }

  SynthSession out;
  out.document.info = {params.session_id, manifest.test_id,
                       params.subject_pseudonym, tmpl.page, params.source};
  const SynthStyle& style = params.style;
  Micros cursor = 0;
  for (size_t i = 0; i < plan.strokes.size(); ++i) {
    const PlannedStroke& ps = plan.strokes[i];
    if (i > 0) {
      cursor += std::max<Micros>(
          1, static_cast<Micros>(std::llround(ps.pause_before_s * 1e6)));
    }
    SynthSpec spec;
    spec.path = ps.path;
    spec.speed_mm_s = style.speed_mm_s;
    spec.speed_profile = style.speed_profile;
    spec.tremor_amplitude_mm = style.tremor_amplitude_mm;
    spec.tremor_freq_hz = style.tremor_freq_hz;
    spec.jitter_sigma_mm = style.jitter_sigma_mm;
    spec.rate_hz = style.rate_hz;
    spec.pressure_profile = style.pressure_profile;
    spec.start_t = cursor;
    spec.seed = DeriveSeed(seed, i);
    INKASSESS_ASSIGN_OR_RETURN(std::vector<RawSample> samples,
                               GenStroke(spec));
    out.document.samples.insert(out.document.samples.end(), samples.begin(),
                                samples.end());
    // Pen-up report one sample period after the last contact, or halfway
    // into a shorter pause.
    Micros period =
        static_cast<Micros>(std::llround(1e6 / style.rate_hz));
    if (i + 1 < plan.strokes.size()) {
      Micros next_pause = static_cast<Micros>(
          std::llround(plan.strokes[i + 1].pause_before_s * 1e6));
      period = std::min(period, next_pause / 2);
    }
    cursor = samples.back().t;
    if (period > 0) {
      RawSample lift = samples.back();
      lift.t += period;
      lift.pressure = 0;
      lift.contact = false;
      out.document.samples.push_back(lift);
    }
    manifest.strokes.push_back({static_cast<int>(i), ps.group,
                                style.tremor_amplitude_mm,
                                style.tremor_freq_hz, style.speed_mm_s});
  }
  manifest.seed = seed;
  manifest.session_id = params.session_id;
  manifest.group_count = static_cast<int>(plan.group_labels.size());
  manifest.group_labels = plan.group_labels;
  out.manifest = std::move(manifest);
  out.tmpl = std::move(tmpl);
  return out;
}

}  // namespace

nlohmann::ordered_json ManifestToJson(const SynthManifest& m) {
  nlohmann::ordered_json strokes = nlohmann::ordered_json::array();
  for (const StrokeTruth& s : m.strokes) {
    strokes.push_back({{"stroke", s.stroke},
                       {"group", s.group},
                       {"tremor_amplitude_mm", s.tremor_amplitude_mm},
                       {"tremor_freq_hz", s.tremor_freq_hz},
                       {"speed_mm_s", s.speed_mm_s}});
  }
  nlohmann::ordered_json pauses = nlohmann::ordered_json::array();
  for (const PauseTruth& p : m.long_pauses) {
    pauses.push_back(
        {{"before_stroke", p.before_stroke}, {"duration_s", p.duration_s}});
  }
  nlohmann::ordered_json corrections = nlohmann::ordered_json::array();
  for (const CorrectionTruth& c : m.corrections) {
    corrections.push_back(
        {{"stroke", c.stroke}, {"original_stroke", c.original_stroke}});
  }
  return {{"seed", m.seed},
          {"test_id", m.test_id},
          {"session_id", m.session_id},
          {"group_count", m.group_count},
          {"group_labels", m.group_labels},
          {"strokes", std::move(strokes)},
          {"long_pauses", std::move(pauses)},
          {"corrections", std::move(corrections)},
          {"trail_errors", m.trail_errors},
          {"trail_skipped", m.trail_skipped},
          {"akt_crossed_targets", m.akt_crossed_targets},
          {"akt_crossed_distractors", m.akt_crossed_distractors},
          {"fields_filled", m.fields_filled},
          {"expected", m.expected}};
}

absl::StatusOr<SynthSession> GenTestSession(std::string_view test_id,
                                            const SynthParams& params,
                                            uint64_t seed) {
  INKASSESS_RETURN_IF_ERROR(RegistryLookup(test_id).status());
  TestTemplate tmpl;
  if (test_id == "TMT") {
    if (params.trail_nodes < 2) {
      return MakeError(ErrorKind::kInvalidSpec, "trail needs two nodes");
    }
    tmpl = TrailTemplate(params.trail_nodes);
  } else if (test_id == "CDT" || test_id == "MoCA") {
    tmpl = ClockTemplate(std::string(test_id), params.target_time,
                         params.preprinted_contour);
    if (test_id == "MoCA") {
      INKASSESS_ASSIGN_OR_RETURN(TestTemplate moca, DefaultTemplate("MoCA"));
      for (const Region& r : moca.regions) {
        if (r.id == "cube") tmpl.regions.push_back(r);
      }
    }
  } else {
    INKASSESS_ASSIGN_OR_RETURN(tmpl, DefaultTemplate(test_id));
  }

  Plan plan;
  SynthManifest m;
  m.test_id = std::string(test_id);
  NormalSource rng(DeriveSeed(seed, 1u << 20));
  if (test_id == "CDT" || test_id == "MoCA") {
    INKASSESS_RETURN_IF_ERROR(PlanClock(plan, m, tmpl, params));
    if (const Region* cube = tmpl.FindRegion("cube")) {
      PlanCube(plan, cube->bbox.Center(), 30);
      m.expected["cube.complex_figure"] = 1;
      m.expected["cube.shapes_found"] = 1;
    }
  } else if (test_id == "TMT") {
    INKASSESS_RETURN_IF_ERROR(PlanTrail(plan, m, tmpl, params, rng));
  } else if (test_id == "AKT") {
    INKASSESS_RETURN_IF_ERROR(PlanCrossOut(plan, m, tmpl, params, rng));
  } else if (test_id == "MMSE") {
    PlanPentagons(plan, m, *CanvasWithExpect(tmpl, "interlocking-pentagons"),
                  25, params.pentagon_layout);
  } else if (test_id == "DemTect") {
    INKASSESS_RETURN_IF_ERROR(PlanFields(plan, m, tmpl, params, rng));
  } else if (test_id == "ROCF") {
    plan.Add(ArcPath({60, 90}, 20, 0, 360), "circle");
    plan.Add(ClosedPath(Rectangle({140, 90}, 50, 30, 0)), "rectangle");
    plan.Add(ClosedPath(RegularPolygon({60, 190}, 25, 3, 0)), "triangle");
    plan.Add(LinePath({120, 170}, {180, 230}), "line");
    for (const char* s : {"circle", "rectangle", "triangle", "line"}) {
      m.expected[std::string("figure.") + s] = 1;
    }
    m.expected["figure.shapes_found"] = 4;
  } else if (test_id == "CERAD") {
    plan.Add(ArcPath(tmpl.FindRegion("circle")->bbox.Center(), 25, 0, 360),
             "circle");
    plan.Add(ClosedPath(Rhombus(tmpl.FindRegion("diamond")->bbox.Center(), 25,
                                30, 0)),
             "diamond");
    plan.Add(ClosedPath(Rectangle(tmpl.FindRegion("rectangles")->bbox.Center(),
                                  50, 30, 0)),
             "rectangle");
    PlanCube(plan, tmpl.FindRegion("cube")->bbox.Center(), 30);
    PlanPentagons(plan, m, *tmpl.FindRegion("pentagons"), 20,
                  params.pentagon_layout);
    for (const char* id : {"circle", "diamond", "rectangles", "cube"}) {
      m.expected[std::string(id) + ".shapes_found"] = 1;
    }
  }
  return Render(std::move(plan), std::move(m), std::move(tmpl), params, seed);
}

absl::StatusOr<SynthSession> GenShapeSession(Shape shape,
                                             const SynthParams& params,
                                             uint64_t seed) {
  NormalSource rng(DeriveSeed(seed, 1u << 21));
  const Point c{105, 148};
  const std::string label(ShapeName(shape));
  Plan plan;
  switch (shape) {
    case Shape::kLine: {
      double half = Uniform(rng, 15, 40);
      double angle = Uniform(rng, 0, 180);
      plan.Add(LinePath(OnClock(c, half, angle + 180), OnClock(c, half, angle)),
               label);
      break;
    }
    case Shape::kCircle: {
      double r = Uniform(rng, 10, 30);
      double sweep = rng.Uniform() < 0.5 ? 360 : -360;
      plan.Add(ArcPath(c, r, Uniform(rng, 0, 360), sweep), label);
      break;
    }
    case Shape::kTriangle:
    case Shape::kPentagon: {
      int n = shape == Shape::kTriangle ? 3 : 5;
      double r = Uniform(rng, 15, 30);
      std::vector<Point> v = RegularPolygon(c, r, n, Uniform(rng, 0, 360));
      for (Point& p : v) {
        p.x += Uniform(rng, -0.05, 0.05) * r;
        p.y += Uniform(rng, -0.05, 0.05) * r;
      }
      plan.Add(ClosedPath(v, static_cast<size_t>(rng.Uniform() * n)), label);
      break;
    }
    case Shape::kRectangle: {
      std::vector<Point> v = Rectangle(c, Uniform(rng, 20, 50),
                                       Uniform(rng, 20, 50),
                                       Uniform(rng, -5, 5));
      plan.Add(ClosedPath(v, static_cast<size_t>(rng.Uniform() * 4)), label);
      break;
    }
    case Shape::kDiamond: {
      double a = Uniform(rng, 12, 25);
      std::vector<Point> v =
          Rhombus(c, a, a * Uniform(rng, 0.7, 1.4), Uniform(rng, -5, 5));
      plan.Add(ClosedPath(v, static_cast<size_t>(rng.Uniform() * 4)), label);
      break;
    }
    case Shape::kCrossOut: {
      double angle = Uniform(rng, 0, 180);
      double second = angle + Uniform(rng, 60, 120);
      double h1 = Uniform(rng, 10, 20);
      double h2 = Uniform(rng, 10, 20);
      int g = plan.NewGroup(label);
      plan.AddToGroup(
          LinePath(OnClock(c, h1, angle + 180), OnClock(c, h1, angle)), g);
      plan.AddToGroup(
          LinePath(OnClock(c, h2, second + 180), OnClock(c, h2, second)), g);
      break;
    }
    default:
      return MakeError(ErrorKind::kInvalidSpec,
                       "no generator for shape " + label);
  }
  SynthManifest m;
  m.test_id = "SHAPES";
  TestTemplate tmpl{"SHAPES",
                    {},
                    {{"page", RegionKind::kCanvas, BBox{0, 0, 210, 297},
                      std::nullopt, label}}};
  return Render(std::move(plan), std::move(m), std::move(tmpl), params, seed);
}

}  // namespace inkassess
