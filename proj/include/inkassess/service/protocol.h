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

#ifndef INKASSESS_SERVICE_PROTOCOL_H_
#define INKASSESS_SERVICE_PROTOCOL_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace inkassess {

// Newline-delimited JSON frames; docs/protocol.md has the per-type schemas.
inline constexpr int kProtocolVersion = 1;

// Frames longer than this are rejected before parsing.
inline constexpr size_t kMaxFrameBytes = 16 << 20;

// A client may have at most this many samples batches awaiting their
// feature_update acknowledgement.
inline constexpr int kMaxUnackedBatches = 64;

enum class MessageType {
  kHello,
  kStartSession,
  kSamples,
  kEndSession,
  kSubscribe,
  kReplayRequest,
  kFeatureUpdate,
  kStrokeCompleted,
  kClassification,
  kScoreUpdate,
  kReplayEvent,
  kReplaySuggestion,
  kSessionSummary,
  kError,
};

std::string_view MessageTypeName(MessageType type);
std::optional<MessageType> ParseMessageType(std::string_view name);
bool IsClientMessage(MessageType type);

struct Message {
  MessageType type;
  // Empty only for hello.
  std::string session_id;
  nlohmann::json body;
};

// Parses one frame. ProtocolError for malformed JSON, non-objects, a missing
// or unknown "type", a hello without an integer "version", or any other
// message without a non-empty string "session_id".
absl::StatusOr<Message> ParseMessage(std::string_view line);

// {"type":"error","session_id":...,"kind":...,"message":...}; session_id is
// omitted when empty. Statuses without a kind report "Internal".
nlohmann::ordered_json ErrorMessage(const absl::Status& status,
                                    std::string_view session_id = "");

// Starts an outbound message: {"type": ..., "session_id": ...}.
nlohmann::ordered_json NewMessage(MessageType type,
                                  std::string_view session_id);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_PROTOCOL_H_
