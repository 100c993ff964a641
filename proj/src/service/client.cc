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

#include "inkassess/service/client.h"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>

#include "absl/strings/str_cat.h"
#include "inkassess/service/protocol.h"
#include "inkassess/status.h"

namespace inkassess {

absl::StatusOr<std::unique_ptr<NdjsonClient>> NdjsonClient::Connect(
    const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot resolve ", host, ": ",
                                  gai_strerror(rc)));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot connect to ", host, ":", port));
  }
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return std::unique_ptr<NdjsonClient>(new NdjsonClient(fd));
}

NdjsonClient::~NdjsonClient() { ::close(fd_); }

absl::Status NdjsonClient::SendLine(std::string_view line) {
  std::string frame(line);
  frame += '\n';
  size_t sent = 0;
  while (sent < frame.size()) {
    ssize_t n = ::send(fd_, frame.data() + sent, frame.size() - sent,
                       MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return MakeError(ErrorKind::kIoError, "send failed");
    sent += static_cast<size_t>(n);
  }
  return absl::OkStatus();
}

absl::Status NdjsonClient::Send(const nlohmann::ordered_json& message) {
  return SendLine(message.dump());
}

absl::StatusOr<nlohmann::json> NdjsonClient::Receive(
    std::chrono::milliseconds timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    size_t end = buffer_.find('\n');
    if (end != std::string::npos) {
      std::string line = buffer_.substr(0, end);
      buffer_.erase(0, end + 1);
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        return MakeError(ErrorKind::kProtocolError, "server sent invalid JSON");
      }
      return j;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      return MakeError(ErrorKind::kIoError, "receive timed out");
    }
    pollfd p{fd_, POLLIN, 0};
    int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) continue;
    char chunk[65536];
    ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return MakeError(ErrorKind::kIoError, "connection closed");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

absl::StatusOr<nlohmann::json> NdjsonClient::Hello(const std::string& token) {
  nlohmann::ordered_json hello = {{"type", "hello"},
                                  {"version", kProtocolVersion}};
  if (!token.empty()) hello["token"] = token;
  INKASSESS_RETURN_IF_ERROR(Send(hello));
  return Receive(std::chrono::seconds(10));
}

absl::StatusOr<std::vector<nlohmann::json>> IngestDocument(
    NdjsonClient& client, const InkDocument& doc,
    const IngestOptions& options) {
  const std::string& id = doc.info.session_id;
  nlohmann::json start;
  SessionInfoToJson(doc.info, start);
  start["type"] = "start_session";
  INKASSESS_RETURN_IF_ERROR(client.Send(start));

  std::vector<nlohmann::json> received;
  int64_t sent_batches = 0;
  int64_t acked = 0;
  bool failed = false;
  auto take = [&]() -> absl::Status {
    INKASSESS_ASSIGN_OR_RETURN(nlohmann::json m,
                               client.Receive(options.timeout));
    std::string type = m.value("type", "");
    if (type == "feature_update") ++acked;
    if (type == "error") failed = true;
    received.push_back(std::move(m));
    return absl::OkStatus();
  };

  const size_t batch = static_cast<size_t>(std::max(1, options.batch_size));
  for (size_t i = 0; i < doc.samples.size() && !failed; i += batch) {
    while (sent_batches - acked >= kMaxUnackedBatches && !failed) {
      INKASSESS_RETURN_IF_ERROR(take());
    }
    nlohmann::ordered_json msg = {{"type", "samples"},
                                  {"session_id", id},
                                  {"seq", sent_batches + 1}};
    nlohmann::json samples = nlohmann::json::array();
    for (size_t k = i; k < std::min(i + batch, doc.samples.size()); ++k) {
      samples.push_back(SampleToJson(doc.samples[k]));
    }
    msg["samples"] = std::move(samples);
    INKASSESS_RETURN_IF_ERROR(client.Send(msg));
    ++sent_batches;
  }
  if (!failed) {
    INKASSESS_RETURN_IF_ERROR(
        client.Send({{"type", "end_session"}, {"session_id", id}}));
  }
  while (!failed) {
    INKASSESS_RETURN_IF_ERROR(take());
    if (received.back().value("type", "") == "session_summary") break;
  }
  return received;
}

}  // namespace inkassess
