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

#ifndef INKASSESS_BATTERY_REGISTRY_H_
#define INKASSESS_BATTERY_REGISTRY_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/recognizer/classifier.h"
#include "json.hpp"

namespace inkassess {

struct TestDefinition {
  std::string test_id;
  std::string full_name;
  std::string approx_time;
  int pen_input_pct = 0;
  // Symbol vocabulary as published for the test.
  std::vector<std::string> symbols;
  // Recognizer labels that realize the symbols above. "pentagrams" map to
  // pentagon (the drawings are pentagons), "cubes" to complex_figure, and
  // digits, numbers and words to unrecognized_text.
  std::vector<Shape> shape_labels;
};

// The eight supported assessments, in alphabetical order of their ids.
const std::vector<TestDefinition>& Registry();

// Fails with UnknownTest.
absl::StatusOr<TestDefinition> RegistryLookup(std::string_view test_id);

nlohmann::ordered_json TestDefinitionToJson(const TestDefinition& def);
nlohmann::ordered_json RegistryToJson();

}  // namespace inkassess

#endif  // INKASSESS_BATTERY_REGISTRY_H_
