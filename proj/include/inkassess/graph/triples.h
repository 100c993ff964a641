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

#ifndef INKASSESS_GRAPH_TRIPLES_H_
#define INKASSESS_GRAPH_TRIPLES_H_

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace inkassess {

// Object position of a triple: an IRI, or a literal with an optional datatype
// IRI (empty means a plain string literal).
struct Term {
  bool is_literal = false;
  std::string value;
  std::string datatype;

  static Term Iri(std::string iri) { return {false, std::move(iri), ""}; }
  static Term Literal(std::string lexical, std::string datatype = "") {
    return {true, std::move(lexical), std::move(datatype)};
  }

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  std::string subject;
  std::string predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// IRIs are written without angle brackets. Characters that N-Triples forbids
// inside an IRI (controls, space, <>"{}|^`\) are rejected.
bool IsValidIri(std::string_view iri);

// Percent-encodes everything outside [A-Za-z0-9-._~] so arbitrary ids can be
// embedded in an IRI path segment.
std::string IriSegment(std::string_view text);

// A duplicate-free triple set. Serialization depends only on the set, never
// on insertion order.
class InterpretationGraph {
 public:
  InterpretationGraph();

  // InvalidFormat when an IRI is malformed or empty, or the predicate is not
  // in the vocabulary. Adding an existing triple is a no-op.
  absl::Status Add(Triple triple);

  const std::set<Triple>& triples() const { return triples_; }
  size_t size() const { return triples_.size(); }
  bool Contains(const Triple& triple) const { return triples_.count(triple); }

  // Prefix name -> namespace IRI. Informational only: N-Triples output is
  // always fully expanded.
  const std::map<std::string, std::string>& prefixes() const {
    return prefixes_;
  }

  friend bool operator==(const InterpretationGraph& a,
                         const InterpretationGraph& b) {
    return a.triples_ == b.triples_;
  }

 private:
  std::set<Triple> triples_;
  std::map<std::string, std::string> prefixes_;
};

// One N-Triples statement without the trailing newline.
std::string TripleLine(const Triple& triple);

// N-Triples text: one statement per line, LF terminated, lines sorted
// bytewise. The empty graph serializes to "".
std::string SerializeNTriples(const InterpretationGraph& graph);

// Accepts the subset written by `SerializeNTriples`, in any line order, plus
// blank lines and '#' comments. Language-tagged literals and blank nodes are
// rejected. Errors are ParseError with a 1-based line number.
absl::StatusOr<InterpretationGraph> ParseNTriples(std::string_view text);

}  // namespace inkassess

#endif  // INKASSESS_GRAPH_TRIPLES_H_
