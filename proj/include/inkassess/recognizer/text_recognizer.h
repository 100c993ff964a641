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

#ifndef INKASSESS_RECOGNIZER_TEXT_RECOGNIZER_H_
#define INKASSESS_RECOGNIZER_TEXT_RECOGNIZER_H_

#include <span>
#include <string>

#include "inkassess/ink/types.h"

namespace inkassess {

struct TextHypothesis {
  std::string text;
  double confidence = 0;  // in [0, 1]
};

// Plugin point for handwriting recognition of digits and words. Strokes that
// no geometric rule explains are handed to the configured recognizer.
class TextRecognizer {
 public:
  virtual ~TextRecognizer() = default;
  virtual TextHypothesis Recognize(
      std::span<const Stroke* const> strokes) const = 0;
};

// Default recognizer: never reads anything.
class NullTextRecognizer : public TextRecognizer {
 public:
  TextHypothesis Recognize(std::span<const Stroke* const>) const override {
    return {};
  }
};

}  // namespace inkassess

#endif  // INKASSESS_RECOGNIZER_TEXT_RECOGNIZER_H_
