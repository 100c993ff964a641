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

#ifndef INKASSESS_SERVICE_STORE_H_
#define INKASSESS_SERVICE_STORE_H_

#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace inkassess {

inline constexpr char kRawLogFile[] = "raw.jsonl";
inline constexpr char kDerivedFile[] = "derived.json";
inline constexpr char kGraphFile[] = "graph.nt";

// Append-only writer for a session's raw.jsonl. Every line is flushed to the
// OS before Append returns.
class RawLogWriter {
 public:
  explicit RawLogWriter(std::FILE* file) : file_(file) {}
  ~RawLogWriter();
  RawLogWriter(const RawLogWriter&) = delete;
  RawLogWriter& operator=(const RawLogWriter&) = delete;

  absl::Status Append(std::string_view line);

 private:
  std::FILE* file_;
};

// Filesystem layout: <root>/<session_id>/{raw.jsonl, derived.json, graph.nt}.
class SessionStore {
 public:
  explicit SessionStore(std::string root) : root_(std::move(root)) {}

  // Ids are 1-128 characters of [A-Za-z0-9._-], not "." or "..".
  static bool IsValidSessionId(std::string_view id);

  const std::string& root() const { return root_; }
  std::string SessionDir(std::string_view id) const;

  // Creates the session directory and opens a fresh raw log. ProtocolError
  // if the id is invalid or the session already exists.
  absl::StatusOr<std::unique_ptr<RawLogWriter>> Create(std::string_view id);

  bool Exists(std::string_view id) const;
  // True once derived artifacts have been written.
  bool Complete(std::string_view id) const;

  // Writes derived.json and graph.nt through temp files and rename.
  absl::Status WriteArtifacts(std::string_view id, std::string_view derived,
                              std::string_view graph);

  // UnknownSession when the file does not exist.
  absl::StatusOr<std::string> ReadFile(std::string_view id,
                                       std::string_view name) const;

  // Session ids present under the root, sorted.
  std::vector<std::string> List() const;

 private:
  std::string root_;
};

// Writes `text` to `path` via a sibling temp file and rename.
absl::Status WriteFileAtomic(const std::string& path, std::string_view text);

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_STORE_H_
