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

#include "inkassess/graph/vocabulary.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "inkassess/features/catalog.h"
#include "inkassess/graph/triples.h"

namespace inkassess::vocab {
namespace {

constexpr std::string_view kProperties[] = {
    "completionTime", "componentName", "confidence",     "endUs",
    "engineVersion",  "flag",          "hasGroup",       "hasLabel",
    "hasScore",       "inputSource",   "isPrimary",      "recognizedText",
    "spanUs",         "startUs",       "strokeCount",    "testId",
    "value",
};

}  // namespace

std::string Term(std::string_view local) {
  return absl::StrCat(std::string(kVocabNs), std::string(local));
}
std::string Xsd(std::string_view local) {
  return absl::StrCat(std::string(kXsdNs), std::string(local));
}
std::string Shape(std::string_view name) {
  return absl::StrCat(std::string(kShapeNs), std::string(name));
}
std::string Feature(std::string_view feature_id) {
  return absl::StrCat(std::string(kFeatureNs), std::string(feature_id));
}

std::string Unit(std::string_view unit) {
  std::string local = unit == "1"
                          ? std::string("ratio")
                          : absl::StrReplaceAll(std::string(unit),
                                                {{"1/", "per_"},
                                                 {"/", "_per_"},
                                                 {"^", ""}});
  return absl::StrCat(std::string(kUnitNs), local);
}

std::string SessionIri(std::string_view session_id) {
  return absl::StrCat(std::string(kSessionNs), IriSegment(session_id));
}

std::string GroupIri(std::string_view session_id, int group_id) {
  return absl::StrCat(SessionIri(session_id), "/group/", group_id);
}

std::string ComponentIri(std::string_view session_id, std::string_view test_id,
                         std::string_view component) {
  return absl::StrCat(SessionIri(session_id), "/score/", IriSegment(test_id),
                      "/", IriSegment(component));
}

const std::vector<std::string>& Predicates() {
  static const auto* predicates = [] {
    auto* out = new std::vector<std::string>;
    out->push_back(std::string(kRdfType));
    for (std::string_view p : kProperties) out->push_back(Term(p));
    for (const std::string& id : FeatureIds(FeatureLevel::kDocument)) {
      out->push_back(Feature(id));
    }
    std::sort(out->begin(), out->end());
    return out;
  }();
  return *predicates;
}

bool IsPredicate(std::string_view iri) {
  const auto& p = Predicates();
  return std::binary_search(p.begin(), p.end(), iri);
}

}  // namespace inkassess::vocab
