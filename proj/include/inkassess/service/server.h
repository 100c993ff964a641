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

#ifndef INKASSESS_SERVICE_SERVER_H_
#define INKASSESS_SERVICE_SERVER_H_

#include <memory>

#include "absl/status/status.h"
#include "inkassess/service/config.h"
#include "inkassess/service/store.h"

namespace inkassess {

// The live service: an NDJSON ingest/subscribe/replay endpoint on
// `config.port` and a read-only HTTP endpoint on `config.http_port`
// (GET /sessions, /sessions/{id}/summary, /sessions/{id}/graph).
//
// Each connection has its own reader thread and an outbound queue drained by
// a writer thread. A session's pipeline runs on the thread of the connection
// that started it, under the session's lock, and its events are queued to the
// owner and every subscriber while that lock is held, so all of them see the
// same order.
class SessionService {
 public:
  explicit SessionService(ServiceConfig config);
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  // Binds both listeners and starts serving. Port 0 picks a free port; the
  // bound ports are then available from port() and http_port().
  absl::Status Start();
  // Closes listeners and connections and joins all threads. Sessions still
  // live keep their raw log and can be rebuilt offline.
  void Stop();

  int port() const;
  int http_port() const;
  const SessionStore& store() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace inkassess

#endif  // INKASSESS_SERVICE_SERVER_H_
