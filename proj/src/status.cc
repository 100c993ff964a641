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

#include "inkassess/status.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"

namespace inkassess {
namespace {

constexpr char kErrorKindUrl[] = "inkassess/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 16> kKinds = {{
    {ErrorKind::kNonMonotonicTimestamp, "NonMonotonicTimestamp",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kEmptyInput, "EmptyInput", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidFormat, "InvalidFormat",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kCollinearPoints, "CollinearPoints",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kUnknownTest, "UnknownTest", absl::StatusCode::kNotFound},
    {ErrorKind::kNoInk, "NoInk", absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kInvalidTemplate, "InvalidTemplate",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kDanglingReference, "DanglingReference",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kParseError, "ParseError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kProtocolError, "ProtocolError",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kVersionMismatch, "VersionMismatch",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kUnknownSession, "UnknownSession",
     absl::StatusCode::kNotFound},
    {ErrorKind::kInvalidSpeed, "InvalidSpeed",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidSpec, "InvalidSpec",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidConfig, "InvalidConfig",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIoError, "IoError", absl::StatusCode::kInternal},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds.back();
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Info(kind);
  std::string text(info.name);
  absl::Status status(info.code, text + ": " + std::string(message));
  status.SetPayload(kErrorKindUrl, absl::Cord(text));
  return status;
}

std::optional<ErrorKind> ErrorKindOf(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kErrorKindUrl);
  if (!payload.has_value()) return std::nullopt;
  std::string name(*payload);
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

std::string ErrorDetail(const absl::Status& status) {
  std::string message(status.message());
  std::optional<ErrorKind> kind = ErrorKindOf(status);
  if (!kind.has_value()) return message;
  std::string prefix = std::string(ErrorKindName(*kind)) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  return message;
}

}  // namespace inkassess
