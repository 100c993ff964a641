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

#ifndef INKASSESS_STATUS_H_
#define INKASSESS_STATUS_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"

namespace inkassess {

// Domain error kinds. Each is carried as a payload on an `absl::Status` so
// callers can branch on the precise failure while still using the usual
// status plumbing.
enum class ErrorKind {
  kNonMonotonicTimestamp,
  kEmptyInput,
  kInvalidFormat,
  kCollinearPoints,
  kUnknownTest,
  kNoInk,
  kInvalidTemplate,
  kDanglingReference,
  kParseError,
  kProtocolError,
  kVersionMismatch,
  kUnknownSession,
  kInvalidSpeed,
  kInvalidSpec,
  kInvalidConfig,
  kIoError,
};

std::string_view ErrorKindName(ErrorKind kind);

// Builds a status whose code matches the kind (e.g. kUnknownSession maps to
// NOT_FOUND) and whose message is prefixed with the kind name.
absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by `MakeError`, if any.
std::optional<ErrorKind> ErrorKindOf(const absl::Status& status);

// The status message without the "Kind: " prefix added by `MakeError`.
std::string ErrorDetail(const absl::Status& status);

inline bool IsError(const absl::Status& status, ErrorKind kind) {
  return ErrorKindOf(status) == kind;
}

}  // namespace inkassess

#define INKASSESS_RETURN_IF_ERROR(expr)         \
  do {                                          \
    ::absl::Status inkassess_status_ = (expr);  \
    if (!inkassess_status_.ok()) {              \
      return inkassess_status_;                 \
    }                                           \
  } while (false)

#define INKASSESS_CONCAT_INNER_(a, b) a##b
#define INKASSESS_CONCAT_(a, b) INKASSESS_CONCAT_INNER_(a, b)

#define INKASSESS_ASSIGN_OR_RETURN(lhs, rexpr) \
  INKASSESS_ASSIGN_OR_RETURN_IMPL_(            \
      INKASSESS_CONCAT_(inkassess_statusor_, __LINE__), lhs, rexpr)

#define INKASSESS_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                     \
  if (!statusor.ok()) {                                        \
    return statusor.status();                                  \
  }                                                            \
  lhs = std::move(statusor).value()

#endif  // INKASSESS_STATUS_H_
