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

#ifndef INKASSESS_INK_INK_JSON_H_
#define INKASSESS_INK_INK_JSON_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/types.h"
#include "json.hpp"

namespace inkassess {

// "ink-json v1": one JSON document holding session metadata and the raw
// sample stream.
//
//   {"format":"ink-json","version":1,"session_id":...,"test_id":...,
//    "subject_pseudonym":...,"page":{"w_mm":...,"h_mm":...},
//    "source":"digital-paper"|"tablet-stylus",
//    "samples":[{"t":int_us,"x":mm,"y":mm,"p":0..1,"c":bool},...]}
inline constexpr std::string_view kInkFormatName = "ink-json";
inline constexpr int kInkFormatVersion = 1;

struct InkDocument {
  SessionInfo info;
  std::vector<RawSample> samples;
};

absl::StatusOr<RawSample> SampleFromJson(const nlohmann::json& j);
nlohmann::json SampleToJson(const RawSample& sample);

absl::StatusOr<SessionInfo> SessionInfoFromJson(const nlohmann::json& j);
void SessionInfoToJson(const SessionInfo& info, nlohmann::json& j);

absl::StatusOr<InkDocument> InkDocumentFromJson(const nlohmann::json& j);
nlohmann::json InkDocumentToJson(const InkDocument& doc);

absl::StatusOr<InkDocument> ParseInkJson(std::string_view text);
std::string WriteInkJson(const InkDocument& doc);

absl::StatusOr<InkDocument> ReadInkFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, std::string_view text);
absl::StatusOr<std::string> ReadTextFile(const std::string& path);

}  // namespace inkassess

#endif  // INKASSESS_INK_INK_JSON_H_
