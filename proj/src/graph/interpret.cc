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

#include "inkassess/graph/interpret.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"
#include "inkassess/features/catalog.h"
#include "inkassess/format.h"
#include "inkassess/graph/vocabulary.h"
#include "inkassess/status.h"
#include "inkassess/version.h"

namespace inkassess {
namespace {

class Builder {
 public:
  explicit Builder(InterpretationGraph& graph) : graph_(graph) {}

  void Iri(const std::string& s, std::string_view local, std::string o) {
    Add(s, vocab::Term(local), Term::Iri(std::move(o)));
  }
  void Type(const std::string& s, std::string_view cls) {
    Add(s, std::string(vocab::kRdfType), Term::Iri(vocab::Term(cls)));
  }
  void String(const std::string& s, std::string_view local, std::string v) {
    Add(s, vocab::Term(local), Term::Literal(std::move(v)));
  }
  void Typed(const std::string& s, std::string predicate, std::string v,
             std::string datatype) {
    Add(s, std::move(predicate),
        Term::Literal(std::move(v), std::move(datatype)));
  }

  absl::Status status() const { return status_; }

 private:
  void Add(const std::string& s, std::string p, Term o) {
    absl::Status st = graph_.Add({s, std::move(p), std::move(o)});
    if (status_.ok()) status_ = st;
  }

  InterpretationGraph& graph_;
  absl::Status status_;
};

}  // namespace

absl::StatusOr<InterpretationGraph> ToTriples(
    const InkSession& session, std::span<const StrokeGroup> groups,
    std::span<const ShapeLabel> labels, const SummativeStats* summary) {
  if (groups.size() != labels.size()) {
    return MakeError(ErrorKind::kDanglingReference,
                     absl::StrCat(labels.size(), " labels for ", groups.size(),
                                  " groups"));
  }
  std::set<int> stroke_ids;
  for (const Stroke& s : session.strokes) stroke_ids.insert(s.index);
  for (const StrokeGroup& g : groups) {
    for (int index : g.strokes) {
      if (!stroke_ids.count(index)) {
        return MakeError(ErrorKind::kDanglingReference,
                         absl::StrCat("group ", g.id, " names stroke ", index));
      }
    }
  }
  if (summary != nullptr && summary->session_id != session.info.session_id) {
    return MakeError(ErrorKind::kDanglingReference,
                     absl::StrCat("summary for session '", summary->session_id,
                                  "'"));
  }

  InterpretationGraph graph;
  Builder b(graph);
  const std::string& sid = session.info.session_id;
  const std::string session_iri = vocab::SessionIri(sid);
  const std::string us = vocab::Unit("us");
  const std::string dbl = vocab::Xsd("double");

  b.Type(session_iri, "Session");
  b.String(session_iri, "testId", session.info.test_id);
  b.String(session_iri, "inputSource",
           std::string(InputSourceName(session.info.source)));
  b.Typed(session_iri, vocab::Term("spanUs"),
          absl::StrCat(session.SpanUs()), us);
  b.String(session_iri, "engineVersion", kEngineVersion);

  std::map<int, const Stroke*> by_index;
  for (const Stroke& s : session.strokes) by_index[s.index] = &s;
  for (size_t i = 0; i < groups.size(); ++i) {
    const StrokeGroup& g = groups[i];
    const ShapeLabel& label = labels[i];
    std::string iri = vocab::GroupIri(sid, g.id);
    Micros start = 0;
    Micros end = 0;
    if (!g.strokes.empty()) {
      start = by_index[g.strokes.front()]->StartT();
      end = by_index[g.strokes.front()]->EndT();
      for (int index : g.strokes) {
        start = std::min(start, by_index[index]->StartT());
        end = std::max(end, by_index[index]->EndT());
      }
    }
    b.Type(iri, "StrokeGroup");
    b.Iri(session_iri, "hasGroup", iri);
    b.Iri(iri, "hasLabel", vocab::Shape(ShapeName(label.label)));
    b.Typed(iri, vocab::Term("confidence"), FormatDouble(label.confidence),
            dbl);
    b.Typed(iri, vocab::Term("strokeCount"), absl::StrCat(g.strokes.size()),
            vocab::Xsd("integer"));
    b.Typed(iri, vocab::Term("startUs"), absl::StrCat(start), us);
    b.Typed(iri, vocab::Term("endUs"), absl::StrCat(end), us);
    if (!label.text.empty()) b.String(iri, "recognizedText", label.text);
  }

  if (summary != nullptr) {
    b.Typed(session_iri, vocab::Term("completionTime"),
            FormatDouble(summary->completion_time_s), vocab::Unit("s"));
    for (const std::string& flag : summary->flags) {
      b.String(session_iri, "flag", flag);
    }
    const FeatureVector& doc = summary->document;
    for (size_t i = 0; i < doc.size(); ++i) {
      const std::string& id = doc.ids()[i];
      b.Typed(session_iri, vocab::Feature(id), FormatDouble(doc.at(i)),
              vocab::Unit(FindFeature(id)->unit));
    }
    for (const TestResult& r : summary->results) {
      for (const ScoreComponent& c : r.components) {
        std::string iri = vocab::ComponentIri(sid, r.test_id, c.name);
        b.Type(iri, "ScoreComponent");
        b.Iri(session_iri, "hasScore", iri);
        b.String(iri, "componentName", c.name);
        b.Typed(iri, vocab::Term("value"), FormatDouble(c.value), dbl);
        if (c.name == r.primary) {
          b.Typed(iri, vocab::Term("isPrimary"), "true", vocab::Xsd("boolean"));
        }
      }
    }
  }
  INKASSESS_RETURN_IF_ERROR(b.status());
  return graph;
}

}  // namespace inkassess
