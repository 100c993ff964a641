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

#include "inkassess/ink/ink_json.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

using nlohmann::json;

absl::Status Invalid(std::string_view message) {
  return MakeError(ErrorKind::kInvalidFormat, message);
}

absl::StatusOr<double> FiniteNumber(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    return Invalid(absl::StrCat("missing numeric field '", key, "'"));
  }
  double value = it->get<double>();
  if (!std::isfinite(value)) {
    return Invalid(absl::StrCat("field '", key, "' is not finite"));
  }
  return value;
}

absl::StatusOr<std::string> StringField(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    return Invalid(absl::StrCat("missing string field '", key, "'"));
  }
  return it->get<std::string>();
}

}  // namespace

absl::StatusOr<RawSample> SampleFromJson(const json& j) {
  if (!j.is_object()) return Invalid("sample is not an object");
  RawSample s;
  auto t = j.find("t");
  if (t == j.end() || !t->is_number_integer()) {
    return Invalid("sample 't' must be an integer (microseconds)");
  }
  s.t = t->get<int64_t>();
  if (s.t < 0) return Invalid("sample 't' must be non-negative");
  INKASSESS_ASSIGN_OR_RETURN(s.x, FiniteNumber(j, "x"));
  INKASSESS_ASSIGN_OR_RETURN(s.y, FiniteNumber(j, "y"));
  INKASSESS_ASSIGN_OR_RETURN(s.pressure, FiniteNumber(j, "p"));
  auto c = j.find("c");
  if (c == j.end() || !c->is_boolean()) {
    return Invalid("sample 'c' must be a boolean");
  }
  s.contact = c->get<bool>();
  if (s.pressure < 0 || s.pressure > 1) {
    return Invalid("sample pressure outside [0,1]");
  }
  if (!s.contact && s.pressure != 0) {
    return Invalid("hover sample must carry pressure 0");
  }
  return s;
}

json SampleToJson(const RawSample& s) {
  return json{{"t", s.t}, {"x", s.x}, {"y", s.y}, {"p", s.pressure},
              {"c", s.contact}};
}

absl::StatusOr<SessionInfo> SessionInfoFromJson(const json& j) {
  SessionInfo info;
  INKASSESS_ASSIGN_OR_RETURN(info.session_id, StringField(j, "session_id"));
  INKASSESS_ASSIGN_OR_RETURN(info.test_id, StringField(j, "test_id"));
  INKASSESS_ASSIGN_OR_RETURN(info.subject_pseudonym,
                             StringField(j, "subject_pseudonym"));
  auto page = j.find("page");
  if (page == j.end() || !page->is_object()) return Invalid("missing 'page'");
  INKASSESS_ASSIGN_OR_RETURN(info.page.w_mm, FiniteNumber(*page, "w_mm"));
  INKASSESS_ASSIGN_OR_RETURN(info.page.h_mm, FiniteNumber(*page, "h_mm"));
  if (info.page.w_mm <= 0 || info.page.h_mm <= 0) {
    return Invalid("page dimensions must be positive");
  }
  INKASSESS_ASSIGN_OR_RETURN(std::string source, StringField(j, "source"));
  std::optional<InputSource> parsed = ParseInputSource(source);
  if (!parsed.has_value()) {
    return Invalid(absl::StrCat("unknown source '", source, "'"));
  }
  info.source = *parsed;
  return info;
}

void SessionInfoToJson(const SessionInfo& info, json& j) {
  j["session_id"] = info.session_id;
  j["test_id"] = info.test_id;
  j["subject_pseudonym"] = info.subject_pseudonym;
  j["page"] = json{{"w_mm", info.page.w_mm}, {"h_mm", info.page.h_mm}};
  j["source"] = std::string(InputSourceName(info.source));
}

absl::StatusOr<InkDocument> InkDocumentFromJson(const json& j) {
  if (!j.is_object()) return Invalid("document is not an object");
  auto format = j.find("format");
  if (format == j.end() || !format->is_string() ||
      format->get<std::string>() != kInkFormatName) {
    return Invalid("unsupported or missing 'format'");
  }
  auto version = j.find("version");
  if (version == j.end() || !version->is_number_integer() ||
      version->get<int64_t>() != kInkFormatVersion) {
    return Invalid("unsupported or missing 'version'");
  }
  InkDocument doc;
  INKASSESS_ASSIGN_OR_RETURN(doc.info, SessionInfoFromJson(j));
  auto samples = j.find("samples");
  if (samples == j.end() || !samples->is_array()) {
    return Invalid("missing 'samples' array");
  }
  doc.samples.reserve(samples->size());
  for (const json& s : *samples) {
    INKASSESS_ASSIGN_OR_RETURN(RawSample sample, SampleFromJson(s));
    doc.samples.push_back(sample);
  }
  return doc;
}

json InkDocumentToJson(const InkDocument& doc) {
  json j;
  j["format"] = std::string(kInkFormatName);
  j["version"] = kInkFormatVersion;
  SessionInfoToJson(doc.info, j);
  json samples = json::array();
  for (const RawSample& s : doc.samples) samples.push_back(SampleToJson(s));
  j["samples"] = std::move(samples);
  return j;
}

absl::StatusOr<InkDocument> ParseInkJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return Invalid("malformed JSON");
  return InkDocumentFromJson(j);
}

std::string WriteInkJson(const InkDocument& doc) {
  return InkDocumentToJson(doc).dump() + "\n";
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError, absl::StrCat("cannot open ", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorKind::kIoError, absl::StrCat("cannot write ", path));
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    return MakeError(ErrorKind::kIoError, absl::StrCat("write failed ", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<InkDocument> ReadInkFile(const std::string& path) {
  INKASSESS_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParseInkJson(text);
}

}  // namespace inkassess
