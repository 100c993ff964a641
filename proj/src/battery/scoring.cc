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

#include "inkassess/battery/scoring.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_split.h"
#include "inkassess/battery/polygon.h"
#include "inkassess/features/export.h"
#include "inkassess/features/session_features.h"
#include "inkassess/ink/geometry.h"
#include "inkassess/recognizer/corners.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

constexpr char kPentagonExpect[] = "interlocking-pentagons";
constexpr char kContourExpect[] = "contour";

absl::Status NoInkError() {
  return MakeError(ErrorKind::kNoInk, "session contains no strokes");
}

bool InRegion(const StrokeGroup& group, const Region* region) {
  if (region == nullptr) return true;
  Point c = group.bbox.Center();
  return region->bbox.Contains(c.x, c.y);
}

std::vector<const LabeledGroup*> GroupsIn(
    const std::vector<LabeledGroup>& groups, const Region* region) {
  std::vector<const LabeledGroup*> out;
  for (const LabeledGroup& g : groups) {
    if (InRegion(g.group, region)) out.push_back(&g);
  }
  return out;
}

// Parses a comma separated list of recognizer labels.
std::optional<std::vector<Shape>> ParseChecklist(std::string_view expect) {
  std::vector<Shape> shapes;
  for (absl::string_view part : absl::StrSplit(
           absl::string_view(expect.data(), expect.size()), ',')) {
    auto shape = ParseShape(std::string_view(part.data(), part.size()));
    if (!shape.has_value()) return std::nullopt;
    shapes.push_back(*shape);
  }
  if (shapes.empty()) return std::nullopt;
  return shapes;
}

// Parameter in [0, 1] at which segment ab first lies inside the circle.
std::optional<double> CircleEntry(const Point& a, const Point& b,
                                  const Point& c, double r) {
  double fx = a.x - c.x;
  double fy = a.y - c.y;
  if (fx * fx + fy * fy <= r * r) return 0.0;
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double qa = dx * dx + dy * dy;
  if (qa == 0) return std::nullopt;
  double qb = 2 * (fx * dx + fy * dy);
  double qc = fx * fx + fy * fy - r * r;
  double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return std::nullopt;
  double t = (-qb - std::sqrt(disc)) / (2 * qa);
  if (t < 0 || t > 1) return std::nullopt;
  return t;
}

const Region* ClockCanvas(const TestTemplate& tmpl) {
  for (const Region* r : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (r->expect.has_value() && ParseClockTime(*r->expect).has_value()) {
      return r;
    }
  }
  return nullptr;
}

const Region* PentagonCanvas(const TestTemplate& tmpl, std::string_view id) {
  for (const Region* r : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (id.empty() ? r->expect == kPentagonExpect : r->id == id) return r;
  }
  return nullptr;
}

struct HandCandidate {
  int stroke = 0;
  double length = 0;
  double angle = 0;
};

CdtResult ScoreClock(const InkSession& session, const TestTemplate& tmpl,
                     const Region* canvas, ClockTime target,
                     const std::vector<LabeledGroup>& all_groups,
                     const ScoringConfig& config) {
  CdtResult r;
  std::vector<const LabeledGroup*> groups = GroupsIn(all_groups, canvas);

  // Clock face.
  const LabeledGroup* contour = nullptr;
  const Region* preprinted = nullptr;
  for (const Region* reg : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (reg->expect == kContourExpect) preprinted = reg;
  }
  if (preprinted != nullptr) {
    r.contour_present = true;
    r.contour_closed = true;
    r.center = preprinted->bbox.Center();
    r.radius =
        std::min(preprinted->bbox.Width(), preprinted->bbox.Height()) / 2;
  } else {
    for (const LabeledGroup* g : groups) {
      if (g->label.label != Shape::kCircle) continue;
      double radius = g->label.evidence.at("circle_r");
      if (radius <= config.contour_min_radius_mm) continue;
      if (contour == nullptr ||
          radius > contour->label.evidence.at("circle_r")) {
        contour = g;
      }
    }
    if (contour != nullptr) {
      r.contour_present = true;
      r.center = {contour->label.evidence.at("circle_cx"),
                  contour->label.evidence.at("circle_cy")};
      r.radius = contour->label.evidence.at("circle_r");
      const Stroke& s =
          session.strokes[static_cast<size_t>(contour->group.strokes[0])];
      double gap = Distance(PointOf(s.samples.front()),
                            PointOf(s.samples.back()));
      r.contour_closed = gap < config.contour_closure_ratio * r.radius;
    } else if (!groups.empty()) {
      BBox box = groups[0]->group.bbox;
      for (const LabeledGroup* g : groups) box.Extend(g->group.bbox);
      r.center = box.Center();
      r.radius = std::max(box.Width(), box.Height()) / 2;
    }
  }

  // Hands: straight strokes with one end near the center.
  std::vector<HandCandidate> hands;
  for (const LabeledGroup* g : groups) {
    if (g == contour) continue;
    for (int index : g->group.strokes) {
      const Stroke& s = session.strokes[static_cast<size_t>(index)];
      if (s.samples.size() < 2) continue;
      const Stroke* one[] = {&s};
      std::vector<Point> pts = ResampledPoints(one);
      if (SpreadRatio(pts) >= config.classifier.line_spread_ratio) continue;
      if (!DetectCorners(s, config.classifier.corners).corners.empty()) {
        continue;
      }
      Point a = PointOf(s.samples.front());
      Point b = PointOf(s.samples.back());
      if (Distance(a, r.center) > Distance(b, r.center)) std::swap(a, b);
      double reach = config.hand_center_ratio * r.radius;
      if (Distance(a, r.center) > reach || Distance(a, b) <= reach) continue;
      hands.push_back({index, Distance(a, b), ClockAngleDeg(a, b)});
    }
  }
  std::stable_sort(hands.begin(), hands.end(),
                   [](const HandCandidate& x, const HandCandidate& y) {
                     return x.length > y.length;
                   });
  if (hands.size() > 2) hands.resize(2);
  r.hands_present = hands.size() == 2;
  for (const HandCandidate& h : hands) {
    r.hand_strokes.push_back(h.stroke);
    r.hand_angles_deg.push_back(h.angle);
  }
  if (r.hands_present) {
    double hour = 30.0 * (target.hour % 12) + 0.5 * target.minute;
    double minute = 6.0 * target.minute;
    double tol = config.angle_tolerance_deg;
    auto ok = [&](double angle, double want) {
      return AngleDiffDeg(angle, want) <= tol;
    };
    r.hands_correct = (ok(hands[0].angle, minute) && ok(hands[1].angle, hour)) ||
                      (ok(hands[0].angle, hour) && ok(hands[1].angle, minute));
  }

  // Marks: everything else strictly inside the face.
  std::vector<double> mark_angles;
  for (const LabeledGroup* g : groups) {
    if (g == contour || r.radius <= 0) continue;
    bool is_hand = false;
    bool inside = true;
    for (int index : g->group.strokes) {
      if (std::find(r.hand_strokes.begin(), r.hand_strokes.end(), index) !=
          r.hand_strokes.end()) {
        is_hand = true;
      }
      for (const RawSample& s :
           session.strokes[static_cast<size_t>(index)].samples) {
        if (Distance(PointOf(s), r.center) >= r.radius) inside = false;
      }
    }
    if (is_hand || !inside) continue;
    r.mark_groups.push_back(g->group.id);
    mark_angles.push_back(ClockAngleDeg(r.center, g->group.bbox.Center()));
  }
  r.mark_count = static_cast<int>(r.mark_groups.size());
  if (r.mark_count == 12) {
    std::set<int> hours;
    bool placed = true;
    for (double a : mark_angles) {
      int nearest = static_cast<int>(std::lround(a / 30.0)) % 12;
      if (AngleDiffDeg(a, nearest * 30.0) > config.angle_tolerance_deg) {
        placed = false;
      }
      hours.insert(nearest);
    }
    r.marks_well_placed = placed && hours.size() == 12;
  }
  r.total = r.contour_present + r.contour_closed + (r.mark_count == 12) +
            r.marks_well_placed + r.hands_present + r.hands_correct;
  return r;
}

PentagonResult CheckPentagons(const InkSession& session, const Region* canvas,
                              const std::vector<LabeledGroup>& all_groups,
                              const ScoringConfig& config) {
  PentagonResult r;
  std::vector<std::vector<Point>> hulls;
  for (const LabeledGroup* g : GroupsIn(all_groups, canvas)) {
    if (g->label.label != Shape::kPentagon) continue;
    r.pentagon_groups.push_back(g->group.id);
    const Stroke& s =
        session.strokes[static_cast<size_t>(g->group.strokes[0])];
    std::vector<Point> corners;
    for (const Corner& c :
         DetectCorners(s, config.classifier.corners).corners) {
      corners.push_back(c.point);
    }
    hulls.push_back(ConvexHull(corners));
  }
  r.two_pentagons = r.pentagon_groups.size() == 2;
  if (r.two_pentagons) {
    std::vector<Point> overlap = ClipConvex(hulls[0], hulls[1]);
    r.intersect = overlap.size() >= 3 && std::abs(PolygonArea(overlap)) > 1e-9;
    r.intersection_vertices = r.intersect ? static_cast<int>(overlap.size()) : 0;
    r.intersection_is_quadrilateral = r.intersection_vertices == 4;
  }
  return r;
}

std::vector<ChecklistResult> Checklists(
    const TestTemplate& tmpl, const std::vector<LabeledGroup>& groups) {
  std::vector<ChecklistResult> out;
  for (const Region* region : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (!region->expect.has_value()) continue;
    auto expected = ParseChecklist(*region->expect);
    if (!expected.has_value()) continue;
    ChecklistResult c{region->id, *expected, {}};
    std::vector<const LabeledGroup*> inside = GroupsIn(groups, region);
    for (Shape want : *expected) {
      for (const LabeledGroup* g : inside) {
        if (g->label.label == want) {
          c.found.push_back(want);
          break;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

class ResultBuilder {
 public:
  explicit ResultBuilder(TestResult& result) : result_(result) {}

  void Add(std::string name, double value, std::optional<double> max,
           bool primary = false) {
    if (primary && result_.primary.empty()) result_.primary = name;
    result_.components.push_back({std::move(name), value, 0, max});
  }
  void Flag(std::string flag) { result_.flags.push_back(std::move(flag)); }

 private:
  TestResult& result_;
};

}  // namespace

std::optional<ClockTime> ParseClockTime(std::string_view text) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2 ||
      text.size() != colon + 3) {
    return std::nullopt;
  }
  int hour = 0;
  int minute = 0;
  std::string h(text.substr(0, colon));
  std::string m(text.substr(colon + 1));
  for (char c : h + m) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  if (!absl::SimpleAtoi(h, &hour) || !absl::SimpleAtoi(m, &minute)) {
    return std::nullopt;
  }
  if (hour > 23 || minute > 59) return std::nullopt;
  return ClockTime{hour, minute};
}

double ClockAngleDeg(const Point& center, const Point& p) {
  double deg = std::atan2(p.x - center.x, -(p.y - center.y)) * 180.0 / kPi;
  if (deg < 0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

double AngleDiffDeg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

std::vector<LabeledGroup> LabelGroups(const InkSession& session,
                                      const ScoringConfig& config,
                                      const TextRecognizer* text) {
  std::vector<LabeledGroup> out;
  for (StrokeGroup& g : GroupStrokes(session, config.grouping)) {
    ShapeLabel label = ClassifyGroup(g, session, config.classifier, text);
    out.push_back({std::move(g), std::move(label)});
  }
  return out;
}

absl::StatusOr<CdtResult> ScoreCdt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   std::optional<ClockTime> target,
                                   const ScoringConfig& config) {
  if (session.strokes.empty()) return NoInkError();
  const Region* canvas = ClockCanvas(tmpl);
  if (!target.has_value()) {
    if (canvas == nullptr) {
      return MakeError(ErrorKind::kInvalidTemplate,
                       "no clock canvas with a target time");
    }
    target = ParseClockTime(*canvas->expect);
  }
  return ScoreClock(session, tmpl, canvas, *target, LabelGroups(session, config),
                    config);
}

absl::StatusOr<TmtResult> ScoreTmt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   const ScoringConfig&) {
  if (session.strokes.empty()) return NoInkError();
  struct Node {
    int seq;
    Point center;
    double radius;
  };
  std::vector<Node> nodes;
  for (const Region* r : tmpl.RegionsOfKind(RegionKind::kNode)) {
    nodes.push_back({*r->seq, r->bbox.Center(),
                     std::min(r->bbox.Width(), r->bbox.Height()) / 2});
  }
  if (nodes.empty()) {
    return MakeError(ErrorKind::kInvalidTemplate, "template has no nodes");
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.seq < b.seq; });

  TmtResult r;
  std::vector<bool> visited(nodes.size(), false);
  for (const Stroke& stroke : session.strokes) {
    const std::vector<RawSample>& s = stroke.samples;
    for (size_t i = 0; i < s.size(); ++i) {
      Point a = PointOf(s[i]);
      Point b = i + 1 < s.size() ? PointOf(s[i + 1]) : a;
      std::vector<std::pair<double, size_t>> entries;
      for (size_t n = 0; n < nodes.size(); ++n) {
        if (visited[n]) continue;
        if (auto t = CircleEntry(a, b, nodes[n].center, nodes[n].radius)) {
          entries.push_back({*t, n});
        }
      }
      std::sort(entries.begin(), entries.end());
      for (const auto& [t, n] : entries) {
        visited[n] = true;
        r.visit_order.push_back(nodes[n].seq);
      }
    }
  }
  for (size_t i = 1; i < r.visit_order.size(); ++i) {
    if (r.visit_order[i] != r.visit_order[i - 1] + 1) ++r.sequencing_errors;
  }
  r.nodes_visited = static_cast<int>(r.visit_order.size());
  r.completed = r.visit_order.size() == nodes.size();
  r.completion_time_s = CompletionTimeS(session);
  return r;
}

absl::StatusOr<AktResult> ScoreAkt(const InkSession& session,
                                   const TestTemplate& tmpl,
                                   const ScoringConfig& config) {
  if (session.strokes.empty()) return NoInkError();
  AktResult r;
  for (const Region& region : tmpl.regions) {
    bool target = region.kind == RegionKind::kTarget;
    if (!target && region.kind != RegionKind::kDistractor) continue;
    double ink = 0;
    for (const Stroke& s : session.strokes) {
      ink += PolylineLengthInBox(s.samples, region.bbox);
    }
    bool crossed = ink >= config.crossing_ink_mm;
    if (target) {
      (crossed ? r.hits : r.misses).push_back(region.id);
    } else if (crossed) {
      r.false_alarms.push_back(region.id);
    }
  }
  r.duration_s = CompletionTimeS(session);
  return r;
}

absl::StatusOr<PentagonResult> CheckPentagonCopy(const InkSession& session,
                                                 const TestTemplate& tmpl,
                                                 const ScoringConfig& config,
                                                 std::string_view canvas_id) {
  if (session.strokes.empty()) return NoInkError();
  const Region* canvas = PentagonCanvas(tmpl, canvas_id);
  if (canvas == nullptr && !canvas_id.empty()) {
    return MakeError(ErrorKind::kInvalidTemplate,
                     "no canvas " + std::string(canvas_id));
  }
  return CheckPentagons(session, canvas, LabelGroups(session, config), config);
}

std::vector<FieldResult> FieldCompletion(const InkSession& session,
                                         const TestTemplate& tmpl,
                                         const TextRecognizer* text) {
  std::vector<FieldResult> out;
  for (const Region* region : tmpl.RegionsOfKind(RegionKind::kInputField)) {
    FieldResult f;
    f.region_id = region->id;
    std::vector<const Stroke*> strokes;
    for (const Stroke& s : session.strokes) {
      bool touches = false;
      for (const RawSample& sample : s.samples) {
        if (region->bbox.Contains(sample.x, sample.y)) touches = true;
      }
      if (touches) strokes.push_back(&s);
      f.ink_path_mm += PolylineLengthInBox(s.samples, region->bbox);
    }
    f.has_ink = !strokes.empty();
    if (f.has_ink && text != nullptr) {
      TextHypothesis h = text->Recognize(strokes);
      f.text = h.text;
      f.text_confidence = h.confidence;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<ChecklistResult> ShapeChecklists(const InkSession& session,
                                             const TestTemplate& tmpl,
                                             const ScoringConfig& config,
                                             const TextRecognizer* text) {
  return Checklists(tmpl, LabelGroups(session, config, text));
}

const ScoreComponent* TestResult::Find(std::string_view name) const {
  for (const ScoreComponent& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

absl::StatusOr<TestResult> ScoreSession(const InkSession& session,
                                        const TestTemplate& tmpl,
                                        const ScoringConfig& config,
                                        const TextRecognizer* text) {
  if (session.strokes.empty()) return NoInkError();
  TestResult result;
  result.test_id = tmpl.test_id;
  result.session_id = session.info.session_id;
  result.completion_time_s = CompletionTimeS(session);
  ResultBuilder add(result);
  const std::vector<LabeledGroup> groups = LabelGroups(session, config, text);

  for (const Region* region : tmpl.RegionsOfKind(RegionKind::kCanvas)) {
    if (!region->expect.has_value()) continue;
    const std::string& expect = *region->expect;
    const std::string p = region->id + ".";
    if (auto time = ParseClockTime(expect)) {
      CdtResult c = ScoreClock(session, tmpl, region, *time, groups, config);
      add.Add(p + "contour_present", c.contour_present, 1);
      add.Add(p + "contour_closed", c.contour_closed, 1);
      add.Add(p + "mark_count", c.mark_count, std::nullopt);
      add.Add(p + "marks_well_placed", c.marks_well_placed, 1);
      add.Add(p + "hands_present", c.hands_present, 1);
      add.Add(p + "hands_correct", c.hands_correct, 1);
      add.Add(p + "marks_identity_checked", c.marks_identity_checked, 1);
      add.Add(p + "total", c.total, 6, /*primary=*/true);
    } else if (expect == kPentagonExpect) {
      PentagonResult c = CheckPentagons(session, region, groups, config);
      add.Add(p + "two_pentagons", c.two_pentagons, 1);
      add.Add(p + "intersect", c.intersect, 1);
      add.Add(p + "intersection_is_quadrilateral",
              c.intersection_is_quadrilateral, 1);
      add.Add(p + "checks_passed",
              c.two_pentagons + c.intersect + c.intersection_is_quadrilateral,
              3, /*primary=*/true);
    } else if (expect != kContourExpect) {
      auto expected = ParseChecklist(expect);
      if (!expected.has_value()) {
        return MakeError(ErrorKind::kInvalidTemplate,
                         "canvas " + region->id + " has unknown expect '" +
                             expect + "'");
      }
    }
  }
  for (const ChecklistResult& c : Checklists(tmpl, groups)) {
    const std::string p = c.region_id + ".";
    for (Shape s : c.expected) {
      bool found =
          std::find(c.found.begin(), c.found.end(), s) != c.found.end();
      add.Add(p + std::string(ShapeName(s)), found, 1);
    }
    add.Add(p + "shapes_found", static_cast<double>(c.found.size()),
            static_cast<double>(c.expected.size()), /*primary=*/true);
  }

  const auto node_regions = tmpl.RegionsOfKind(RegionKind::kNode);
  if (!node_regions.empty()) {
    INKASSESS_ASSIGN_OR_RETURN(TmtResult t, ScoreTmt(session, tmpl, config));
    const double n = static_cast<double>(node_regions.size());
    add.Add("sequencing_errors", t.sequencing_errors, n, /*primary=*/true);
    add.Add("nodes_visited", t.nodes_visited, n);
    add.Add("completed", t.completed, 1);
    add.Add("completion_time_s", t.completion_time_s, std::nullopt);
    if (!t.completed) add.Flag("trail-incomplete");
  }

  const double targets =
      static_cast<double>(tmpl.RegionsOfKind(RegionKind::kTarget).size());
  const double distractors =
      static_cast<double>(tmpl.RegionsOfKind(RegionKind::kDistractor).size());
  if (targets > 0 || distractors > 0) {
    INKASSESS_ASSIGN_OR_RETURN(AktResult a, ScoreAkt(session, tmpl, config));
    add.Add("hits", static_cast<double>(a.hits.size()), targets,
            /*primary=*/true);
    add.Add("misses", static_cast<double>(a.misses.size()), targets);
    add.Add("false_alarms", static_cast<double>(a.false_alarms.size()),
            distractors);
    add.Add("duration_s", a.duration_s, std::nullopt);
  }

  std::vector<FieldResult> fields = FieldCompletion(session, tmpl, text);
  if (!fields.empty()) {
    int with_ink = 0;
    for (const FieldResult& f : fields) {
      with_ink += f.has_ink;
      add.Add(f.region_id + ".has_ink", f.has_ink, 1);
      add.Add(f.region_id + ".ink_path_mm", f.ink_path_mm, std::nullopt);
    }
    add.Add("fields_with_ink", with_ink, static_cast<double>(fields.size()),
            /*primary=*/true);
  }
  return result;
}

double CompletionTimeS(const InkSession& session) {
  if (session.strokes.empty()) return 0;
  return ToSeconds(session.strokes.back().EndT() -
                   session.strokes.front().StartT());
}

SummativeStats Summarize(const InkSession& session,
                         std::span<const TestResult> results,
                         const ScoringConfig& config) {
  SummativeStats stats;
  stats.session_id = session.info.session_id;
  stats.test_id = session.info.test_id;
  if (stats.test_id.empty() && !results.empty()) {
    stats.test_id = results.front().test_id;
  }
  stats.results.assign(results.begin(), results.end());
  stats.completion_time_s = CompletionTimeS(session);
  stats.document = SessionFeatures(session).document;
  std::set<std::string> flags;
  const Micros long_pause_us =
      static_cast<Micros>(std::llround(config.long_pause_s * 1e6));
  for (const InAirGap& gap : session.gaps) {
    if (gap.IsInterior() && gap.DurationUs() > long_pause_us) {
      flags.insert("long-pause");
    }
  }
  for (const TestResult& r : results) flags.insert(r.flags.begin(), r.flags.end());
  stats.flags.assign(flags.begin(), flags.end());
  return stats;
}

nlohmann::ordered_json TestResultToJson(const TestResult& result) {
  nlohmann::ordered_json components = nlohmann::ordered_json::array();
  for (const ScoreComponent& c : result.components) {
    nlohmann::ordered_json jc = {
        {"name", c.name}, {"value", c.value}, {"min", c.min}};
    if (c.max.has_value()) jc["max"] = *c.max;
    components.push_back(std::move(jc));
  }
  const ScoreComponent* primary = result.Find(result.primary);
  return {{"test_id", result.test_id},
          {"session_id", result.session_id},
          {"primary", result.primary},
          {"score", primary != nullptr ? primary->value : 0.0},
          {"completion_time_s", result.completion_time_s},
          {"flags", result.flags},
          {"components", std::move(components)}};
}

nlohmann::ordered_json SummaryToJson(const SummativeStats& stats) {
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const TestResult& r : stats.results) {
    results.push_back(TestResultToJson(r));
  }
  return {{"session_id", stats.session_id},
          {"test_id", stats.test_id},
          {"completion_time_s", stats.completion_time_s},
          {"flags", stats.flags},
          {"results", std::move(results)},
          {"document", FeatureVectorToJson(stats.document)["values"]}};
}

}  // namespace inkassess
