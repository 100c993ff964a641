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

#ifndef INKASSESS_FEATURES_FEATURE_VECTOR_H_
#define INKASSESS_FEATURES_FEATURE_VECTOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "inkassess/features/catalog.h"

namespace inkassess {

struct FeatureScope {
  std::string session_id;
  FeatureLevel level = FeatureLevel::kStroke;
  int index = 0;
};

// Fixed-width vector over the catalog ids of one level. Values are stored in
// catalog order, so two vectors of the same level always line up column for
// column.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(FeatureScope scope);

  const FeatureScope& scope() const { return scope_; }
  FeatureScope& mutable_scope() { return scope_; }
  FeatureLevel level() const { return scope_.level; }

  const std::vector<std::string>& ids() const { return FeatureIds(level()); }
  const std::vector<double>& values() const { return values_; }
  size_t size() const { return values_.size(); }

  // Unknown ids are a programming error and abort.
  double Get(std::string_view id) const;
  void Set(std::string_view id, double value);
  double at(size_t i) const { return values_[i]; }
  void set_at(size_t i, double value) { values_[i] = value; }

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.scope_.level == b.scope_.level &&
           a.scope_.index == b.scope_.index &&
           a.scope_.session_id == b.scope_.session_id &&
           a.values_ == b.values_;
  }

 private:
  FeatureScope scope_;
  std::vector<double> values_;
};

}  // namespace inkassess

#endif  // INKASSESS_FEATURES_FEATURE_VECTOR_H_
