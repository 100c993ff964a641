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

#include "inkassess/service/protocol.h"

#include <array>
#include <utility>

#include "absl/strings/str_cat.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

constexpr std::array<std::pair<MessageType, std::string_view>, 14> kNames = {{
    {MessageType::kHello, "hello"},
    {MessageType::kStartSession, "start_session"},
    {MessageType::kSamples, "samples"},
    {MessageType::kEndSession, "end_session"},
    {MessageType::kSubscribe, "subscribe"},
    {MessageType::kReplayRequest, "replay_request"},
    {MessageType::kFeatureUpdate, "feature_update"},
    {MessageType::kStrokeCompleted, "stroke_completed"},
    {MessageType::kClassification, "classification"},
    {MessageType::kScoreUpdate, "score_update"},
    {MessageType::kReplayEvent, "replay_event"},
    {MessageType::kReplaySuggestion, "replay_suggestion"},
    {MessageType::kSessionSummary, "session_summary"},
    {MessageType::kError, "error"},
}};

absl::Status Protocol(std::string_view message) {
  return MakeError(ErrorKind::kProtocolError, message);
}

}  // namespace

std::string_view MessageTypeName(MessageType type) {
  for (const auto& [t, name] : kNames) {
    if (t == type) return name;
  }
  return "error";
}

std::optional<MessageType> ParseMessageType(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

bool IsClientMessage(MessageType type) {
  switch (type) {
    case MessageType::kHello:
    case MessageType::kStartSession:
    case MessageType::kSamples:
    case MessageType::kEndSession:
    case MessageType::kSubscribe:
    case MessageType::kReplayRequest:
      return true;
    default:
      return false;
  }
}

absl::StatusOr<Message> ParseMessage(std::string_view line) {
  if (line.size() > kMaxFrameBytes) return Protocol("frame too large");
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) return Protocol("frame is not valid JSON");
  if (!j.is_object()) return Protocol("frame is not a JSON object");
  auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) {
    return Protocol("missing \"type\"");
  }
  std::optional<MessageType> type =
      ParseMessageType(type_it->get<std::string>());
  if (!type.has_value()) {
    return Protocol(absl::StrCat("unknown message type '",
                                 type_it->get<std::string>(), "'"));
  }
  Message m{*type, "", std::move(j)};
  if (*type == MessageType::kHello) {
    auto v = m.body.find("version");
    if (v == m.body.end() || !v->is_number_integer()) {
      return Protocol("hello without integer \"version\"");
    }
    return m;
  }
  auto sid = m.body.find("session_id");
  if (sid == m.body.end() || !sid->is_string() ||
      sid->get<std::string>().empty()) {
    return Protocol(absl::StrCat(std::string(MessageTypeName(*type)),
                                 " without \"session_id\""));
  }
  m.session_id = sid->get<std::string>();
  return m;
}

nlohmann::ordered_json ErrorMessage(const absl::Status& status,
                                    std::string_view session_id) {
  nlohmann::ordered_json j = {{"type", "error"}};
  if (!session_id.empty()) j["session_id"] = std::string(session_id);
  std::optional<ErrorKind> kind = ErrorKindOf(status);
  j["kind"] = kind.has_value() ? std::string(ErrorKindName(*kind))
                               : std::string("Internal");
  j["message"] = ErrorDetail(status);
  return j;
}

nlohmann::ordered_json NewMessage(MessageType type,
                                  std::string_view session_id) {
  return {{"type", std::string(MessageTypeName(type))},
          {"session_id", std::string(session_id)}};
}

}  // namespace inkassess
