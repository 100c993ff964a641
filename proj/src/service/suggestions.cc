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

#include "inkassess/service/suggestions.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "inkassess/ink/geometry.h"

namespace inkassess {
namespace {

constexpr double kOverlapSpacingMm = 0.5;

double OverlapRatio(const std::vector<Point>& probe,
                    const std::vector<Point>& older, double tolerance) {
  if (probe.empty()) return 0;
  int near = 0;
  for (const Point& p : probe) {
    if (PointPolylineDistance(p, older) <= tolerance) ++near;
  }
  return static_cast<double>(near) / static_cast<double>(probe.size());
}

std::vector<Point> Probe(const Stroke& stroke) {
  auto resampled = ResampleUniform(stroke, kOverlapSpacingMm);
  std::vector<Point> out;
  if (!resampled.ok()) return out;
  for (const TimedPoint& p : *resampled) out.push_back({p.x, p.y});
  return out;
}

}  // namespace

std::string_view SuggestionReasonName(SuggestionReason reason) {
  switch (reason) {
    case SuggestionReason::kLongPause:
      return "long_pause";
    case SuggestionReason::kCorrection:
      return "correction";
    case SuggestionReason::kHighTremor:
      return "high_tremor";
  }
  return "long_pause";
}

std::optional<SuggestionReason> ParseSuggestionReason(std::string_view name) {
  for (SuggestionReason r :
       {SuggestionReason::kLongPause, SuggestionReason::kCorrection,
        SuggestionReason::kHighTremor}) {
    if (SuggestionReasonName(r) == name) return r;
  }
  return std::nullopt;
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(rank));
  size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<ReplaySuggestion> SuggestReplays(
    const InkSession& session, std::span<const FeatureVector> stroke_features,
    const SuggestionConfig& config) {
  std::vector<ReplaySuggestion> out;

  const Micros long_pause_us =
      static_cast<Micros>(std::llround(config.long_pause_s * 1e6));
  for (const InAirGap& gap : session.gaps) {
    if (gap.IsInterior() && gap.DurationUs() > long_pause_us) {
      out.push_back({gap.start_t,
                     gap.end_t,
                     SuggestionReason::kLongPause,
                     {{"duration_s", ToSeconds(gap.DurationUs())}}});
    }
  }

  const Micros min_age_us =
      static_cast<Micros>(std::llround(config.correction_min_age_s * 1e6));
  std::vector<std::vector<Point>> paths;
  for (const Stroke& s : session.strokes) paths.push_back(PointsOf(s.samples));
  for (size_t j = 0; j < session.strokes.size(); ++j) {
    const Stroke& s = session.strokes[j];
    std::vector<Point> probe = Probe(s);
    double best = 0;
    int best_index = -1;
    for (size_t i = 0; i < j; ++i) {
      const Stroke& older = session.strokes[i];
      if (s.StartT() - older.EndT() < min_age_us) continue;
      double ratio =
          OverlapRatio(probe, paths[i], config.correction_tolerance_mm);
      if (ratio > best) {
        best = ratio;
        best_index = older.index;
      }
    }
    if (best_index >= 0 && best >= config.correction_overlap) {
      out.push_back({s.StartT(),
                     s.EndT(),
                     SuggestionReason::kCorrection,
                     {{"stroke", s.index},
                      {"original_stroke", best_index},
                      {"overlap_ratio", best}}});
    }
  }

  std::vector<double> tremor;
  for (const FeatureVector& f : stroke_features) {
    tremor.push_back(f.Get("tremor_index_mm"));
  }
  double cut = Percentile(tremor, config.high_tremor_percentile);
  for (size_t i = 0; i < tremor.size() && i < session.strokes.size(); ++i) {
    if (tremor[i] > cut && tremor[i] >= config.high_tremor_floor_mm) {
      const Stroke& s = session.strokes[i];
      out.push_back({s.StartT(),
                     s.EndT(),
                     SuggestionReason::kHighTremor,
                     {{"stroke", s.index},
                      {"tremor_index_mm", tremor[i]},
                      {"session_percentile_mm", cut}}});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const ReplaySuggestion& a, const ReplaySuggestion& b) {
                     return std::tie(a.start_t, a.reason, a.end_t) <
                            std::tie(b.start_t, b.reason, b.end_t);
                   });
  return out;
}

nlohmann::ordered_json SuggestionToJson(const ReplaySuggestion& s) {
  nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.evidence) {
    // Stroke indices are stored as doubles but read better as integers.
    if (v == std::trunc(v) && std::abs(v) < 9e15) {
      evidence[k] = static_cast<int64_t>(v);
    } else {
      evidence[k] = v;
    }
  }
  return {{"reason", std::string(SuggestionReasonName(s.reason))},
          {"start_t", s.start_t},
          {"end_t", s.end_t},
          {"evidence", std::move(evidence)}};
}

}  // namespace inkassess
