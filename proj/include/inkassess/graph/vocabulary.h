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

#ifndef INKASSESS_GRAPH_VOCABULARY_H_
#define INKASSESS_GRAPH_VOCABULARY_H_

#include <string>
#include <string_view>
#include <vector>

namespace inkassess::vocab {

// Namespaces. The full term list and its meaning live in docs/graph.md.
inline constexpr std::string_view kVocabNs = "urn:inkassess:vocab#";
inline constexpr std::string_view kFeatureNs = "urn:inkassess:feature#";
inline constexpr std::string_view kShapeNs = "urn:inkassess:shape#";
inline constexpr std::string_view kUnitNs = "urn:inkassess:unit#";
inline constexpr std::string_view kSessionNs = "urn:inkassess:session/";
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";

std::string Term(std::string_view local);  // kVocabNs + local
std::string Xsd(std::string_view local);
std::string Shape(std::string_view name);
std::string Feature(std::string_view feature_id);
// Datatype IRI for a catalog unit ("mm/s^2" -> unit#mm_per_s2, "1" ->
// unit#ratio).
std::string Unit(std::string_view unit);

std::string SessionIri(std::string_view session_id);
std::string GroupIri(std::string_view session_id, int group_id);
std::string ComponentIri(std::string_view session_id, std::string_view test_id,
                         std::string_view component);

// Every predicate a graph may use: rdf:type, the vocab# properties, and one
// feature# property per document-level catalog feature. Sorted.
const std::vector<std::string>& Predicates();
bool IsPredicate(std::string_view iri);

}  // namespace inkassess::vocab

#endif  // INKASSESS_GRAPH_VOCABULARY_H_
