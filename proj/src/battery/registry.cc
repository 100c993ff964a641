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

#include "inkassess/battery/registry.h"

#include "inkassess/status.h"

namespace inkassess {

const std::vector<TestDefinition>& Registry() {
  using S = Shape;
  static const std::vector<TestDefinition>* const kRegistry =
      new std::vector<TestDefinition>{
          {"AKT", "Age-Concentration", "15 min", 100, {"cross-out"},
           {S::kCrossOut}},
          {"CDT", "Clock Drawing Test", "2-5 min", 100,
           {"clock", "digits", "lines"},
           {S::kCircle, S::kUnrecognizedText, S::kLine}},
          {"CERAD", "Neuropsychological Battery", "30-45 min", 20,
           {"pentagrams", "circle", "diamond", "rectangles", "cubes"},
           {S::kPentagon, S::kCircle, S::kDiamond, S::kRectangle,
            S::kComplexFigure}},
          {"DemTect", "Dementia Detection", "6-8 min", 20,
           {"numbers", "words"}, {S::kUnrecognizedText}},
          {"MMSE", "Mini-Mental State Examination", "5-10 min", 9,
           {"pentagrams"}, {S::kPentagon}},
          {"MoCA", "Montreal Cognitive Assessment", "10 min", 17,
           {"clock", "digits", "lines"},
           {S::kCircle, S::kUnrecognizedText, S::kLine}},
          {"ROCF", "Rey-Osterrieth", "15 min", 100,
           {"circles", "rectangles", "triangles", "lines"},
           {S::kCircle, S::kRectangle, S::kTriangle, S::kLine}},
          {"TMT", "Trail Making Test", "3-5 min", 100, {"lines"},
           {S::kLine}},
      };
  return *kRegistry;
}

absl::StatusOr<TestDefinition> RegistryLookup(std::string_view test_id) {
  for (const TestDefinition& def : Registry()) {
    if (def.test_id == test_id) return def;
  }
  return MakeError(ErrorKind::kUnknownTest,
                   "no test with id '" + std::string(test_id) + "'");
}

nlohmann::ordered_json TestDefinitionToJson(const TestDefinition& def) {
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (Shape s : def.shape_labels) labels.push_back(std::string(ShapeName(s)));
  return {{"test_id", def.test_id},
          {"full_name", def.full_name},
          {"approx_time", def.approx_time},
          {"pen_input_pct", def.pen_input_pct},
          {"symbols", def.symbols},
          {"shape_labels", std::move(labels)}};
}

nlohmann::ordered_json RegistryToJson() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const TestDefinition& def : Registry()) {
    out.push_back(TestDefinitionToJson(def));
  }
  return out;
}

}  // namespace inkassess
