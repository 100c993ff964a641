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

#ifndef INKASSESS_GRAPH_INTERPRET_H_
#define INKASSESS_GRAPH_INTERPRET_H_

#include <span>

#include "absl/status/statusor.h"
#include "inkassess/battery/scoring.h"
#include "inkassess/graph/triples.h"
#include "inkassess/ink/types.h"
#include "inkassess/recognizer/classifier.h"
#include "inkassess/recognizer/grouping.h"

namespace inkassess {

// Describes a session as triples:
//   session node: type, testId, inputSource, spanUs, engineVersion
//   per group:    type, hasGroup, hasLabel, confidence, strokeCount,
//                 startUs, endUs (+ recognizedText when text was read)
//   with summary: completionTime, one flag literal per flag, one triple per
//                 document feature, and per score component type, hasScore,
//                 componentName, value (+ isPrimary on the primary one).
// `labels[i]` belongs to `groups[i]`. Fails with DanglingReference when the
// counts differ, a group names a stroke the session lacks, or the summary is
// for another session.
absl::StatusOr<InterpretationGraph> ToTriples(
    const InkSession& session, std::span<const StrokeGroup> groups,
    std::span<const ShapeLabel> labels, const SummativeStats* summary);

}  // namespace inkassess

#endif  // INKASSESS_GRAPH_INTERPRET_H_
