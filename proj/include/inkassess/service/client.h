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

#ifndef INKASSESS_SERVICE_CLIENT_H_
#define INKASSESS_SERVICE_CLIENT_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "inkassess/ink/ink_json.h"
#include "json.hpp"

namespace inkassess {

// Blocking NDJSON client for the session service.
class NdjsonClient {
 public:
  static absl::StatusOr<std::unique_ptr<NdjsonClient>> Connect(
      const std::string& host, int port);
  ~NdjsonClient();
  NdjsonClient(const NdjsonClient&) = delete;
  NdjsonClient& operator=(const NdjsonClient&) = delete;

  absl::Status Send(const nlohmann::ordered_json& message);
  // Sends `line` plus a newline, unmodified.
  absl::Status SendLine(std::string_view line);

  // Next frame. IoError on timeout or when the server closed the stream.
  absl::StatusOr<nlohmann::json> Receive(std::chrono::milliseconds timeout);

  // hello and wait for the server's hello (or error).
  absl::StatusOr<nlohmann::json> Hello(const std::string& token = "");

 private:
  explicit NdjsonClient(int fd) : fd_(fd) {}

  int fd_;
  std::string buffer_;
};

struct IngestOptions {
  int batch_size = 1;
  std::chrono::milliseconds timeout{10000};
};

// Streams a document as one session (start_session, samples batches with
// seq 1..n, end_session) on a connection that already said hello. Keeps at
// most kMaxUnackedBatches batches unacknowledged. Returns every frame
// received up to and including session_summary; an error frame ends the
// exchange early and is included.
absl::StatusOr<std::vector<nlohmann::json>> IngestDocument(
    NdjsonClient& client, const InkDocument& doc,
    const IngestOptions& options = {});

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_CLIENT_H_
