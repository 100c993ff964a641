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

#include "inkassess/features/feature_vector.h"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace inkassess {
namespace {

size_t IndexOrDie(FeatureLevel level, std::string_view id) {
  int index = FeatureIndex(level, id);
  if (index < 0) {
    std::fprintf(stderr, "unknown %s feature '%s'\n",
                 std::string(FeatureLevelName(level)).c_str(),
                 std::string(id).c_str());
    std::abort();
  }
  return static_cast<size_t>(index);
}

}  // namespace

FeatureVector::FeatureVector(FeatureScope scope)
    : scope_(std::move(scope)), values_(FeatureIds(scope_.level).size(), 0.0) {}

double FeatureVector::Get(std::string_view id) const {
  return values_[IndexOrDie(level(), id)];
}

void FeatureVector::Set(std::string_view id, double value) {
  values_[IndexOrDie(level(), id)] = value;
}

}  // namespace inkassess
