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

#include "inkassess/service/server.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <list>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "inkassess/ink/ink_json.h"
#include "inkassess/service/pipeline.h"
#include "inkassess/service/protocol.h"
#include "inkassess/service/replay.h"
#include "inkassess/status.h"
#include "inkassess/version.h"

namespace inkassess {
namespace {

using ojson = nlohmann::ordered_json;

// One client socket. Outbound frames are queued and written by a dedicated
// thread so a slow reader never stalls a session pipeline.
class Connection {
 public:
  explicit Connection(int fd) : fd_(fd) {
    writer_ = std::thread([this] { WriteLoop(); });
  }

  ~Connection() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
    if (writer_.joinable()) writer_.join();
    ::close(fd_);
  }

  int fd() const { return fd_; }

  void Send(const ojson& message) {
    std::string line = message.dump();
    line += '\n';
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (closed_) return;
      queue_.push_back(std::move(line));
    }
    cv_.notify_one();
  }

  // Unblocks the reader; queued output is dropped.
  void Shutdown() { ::shutdown(fd_, SHUT_RDWR); }

 private:
  void WriteLoop() {
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      cv_.wait(lock, [this] { return closed_ || !queue_.empty(); });
      if (queue_.empty()) return;
      std::string batch;
      while (!queue_.empty()) {
        batch += queue_.front();
        queue_.pop_front();
      }
      lock.unlock();
      size_t sent = 0;
      while (sent < batch.size()) {
        ssize_t n = ::send(fd_, batch.data() + sent, batch.size() - sent,
                           MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        sent += static_cast<size_t>(n);
      }
      lock.lock();
      if (sent < batch.size()) {
        closed_ = true;
        queue_.clear();
        return;
      }
    }
  }

  int fd_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> queue_;
  bool closed_ = false;
  std::thread writer_;
};

struct LiveSession {
  std::mutex mu;
  std::unique_ptr<SessionPipeline> pipeline;
  std::unique_ptr<RawLogWriter> raw;
  std::shared_ptr<Connection> owner;
  std::vector<std::shared_ptr<Connection>> subscribers;

  void Emit(const ojson& event) {
    owner->Send(event);
    for (const auto& s : subscribers) s->Send(event);
  }
};

struct ConnectionState {
  bool hello = false;
  std::set<std::string> owned;
  std::set<std::string> subscribed;
};

absl::StatusOr<std::vector<RawSample>> RawLogSamples(std::string_view raw) {
  std::vector<RawSample> samples;
  size_t start = 0;
  while (start < raw.size()) {
    size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view line = raw.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    INKASSESS_ASSIGN_OR_RETURN(Message m, ParseMessage(line));
    if (m.type != MessageType::kSamples) continue;
    for (const nlohmann::json& s : m.body["samples"]) {
      INKASSESS_ASSIGN_OR_RETURN(RawSample sample, SampleFromJson(s));
      samples.push_back(sample);
    }
  }
  return samples;
}

}  // namespace

struct SessionService::Impl {
  explicit Impl(ServiceConfig c)
      : config(std::move(c)),
        store(config.store_root),
        defaults(ToPipelineConfig(config)) {}

  ServiceConfig config;
  SessionStore store;
  PipelineConfig defaults;

  int listen_fd = -1;
  int bound_port = 0;
  int bound_http_port = 0;
  std::atomic<bool> stopping{false};
  std::thread acceptor;

  httplib::Server http;
  std::thread http_thread;

  struct Client {
    std::shared_ptr<Connection> conn;
    std::thread reader;
    std::atomic<bool> done{false};
  };
  std::mutex clients_mu;
  std::list<Client> clients;

  std::mutex live_mu;
  std::map<std::string, std::shared_ptr<LiveSession>> live;

  std::shared_ptr<LiveSession> FindLive(const std::string& id) {
    std::lock_guard<std::mutex> lock(live_mu);
    auto it = live.find(id);
    return it == live.end() ? nullptr : it->second;
  }

  void DropLive(const std::string& id) {
    std::lock_guard<std::mutex> lock(live_mu);
    live.erase(id);
  }

  absl::Status Bind();
  void AcceptLoop();
  void ReadLoop(Client& client);
  void Handle(const std::shared_ptr<Connection>& conn, ConnectionState& state,
              std::string_view line);
  void HandleStart(const std::shared_ptr<Connection>& conn,
                   ConnectionState& state, const Message& m);
  void HandleSamples(const std::shared_ptr<Connection>& conn,
                     ConnectionState& state, const Message& m,
                     std::string_view line);
  void HandleEnd(const std::shared_ptr<Connection>& conn,
                 ConnectionState& state, const Message& m,
                 std::string_view line);
  void HandleSubscribe(const std::shared_ptr<Connection>& conn,
                       ConnectionState& state, const Message& m);
  void HandleReplay(const std::shared_ptr<Connection>& conn, const Message& m);
  void Disconnect(const std::shared_ptr<Connection>& conn,
                  ConnectionState& state);
  void SetupHttp();
};

absl::Status SessionService::Impl::Bind() {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  std::string port = std::to_string(config.port);
  int rc = ::getaddrinfo(config.host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot resolve ", config.host, ": ",
                                  gai_strerror(rc)));
  }
  std::string last_error = "no addresses";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
      listen_fd = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (listen_fd < 0) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot listen on ", config.host, ":",
                                  config.port, ": ", last_error));
  }
  sockaddr_storage addr{};
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len);
  bound_port = addr.ss_family == AF_INET6
                   ? ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port)
                   : ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
  return absl::OkStatus();
}

void SessionService::Impl::AcceptLoop() {
  while (!stopping.load()) {
    int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;  // listener closed
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard<std::mutex> lock(clients_mu);
    // Reap finished connections.
    for (auto it = clients.begin(); it != clients.end();) {
      if (it->done.load()) {
        it->reader.join();
        it = clients.erase(it);
      } else {
        ++it;
      }
    }
    if (stopping.load()) {
      ::close(fd);
      return;
    }
    Client& client = clients.emplace_back();
    client.conn = std::make_shared<Connection>(fd);
    client.reader = std::thread([this, &client] { ReadLoop(client); });
  }
}

void SessionService::Impl::ReadLoop(Client& client) {
  std::shared_ptr<Connection> conn = client.conn;
  ConnectionState state;
  std::string buffer;
  char chunk[65536];
  bool open = true;
  while (open) {
    ssize_t n = ::recv(conn->fd(), chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<size_t>(n));
    size_t start = 0;
    while (true) {
      size_t end = buffer.find('\n', start);
      if (end == std::string::npos) break;
      std::string_view line(buffer.data() + start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) Handle(conn, state, line);
      start = end + 1;
    }
    buffer.erase(0, start);
    if (buffer.size() > kMaxFrameBytes) {
      conn->Send(ErrorMessage(
          MakeError(ErrorKind::kProtocolError, "frame too large")));
      open = false;
    }
  }
  Disconnect(conn, state);
  client.done.store(true);
}

void SessionService::Impl::Disconnect(const std::shared_ptr<Connection>& conn,
                                      ConnectionState& state) {
  for (const std::string& id : state.subscribed) {
    if (auto ls = FindLive(id)) {
      std::lock_guard<std::mutex> lock(ls->mu);
      std::erase(ls->subscribers, conn);
    }
  }
  // Sessions abandoned mid-stream stay as raw logs only.
  for (const std::string& id : state.owned) {
    if (auto ls = FindLive(id)) {
      std::lock_guard<std::mutex> lock(ls->mu);
      for (const auto& s : ls->subscribers) {
        s->Send(ErrorMessage(
            MakeError(ErrorKind::kProtocolError, "ingest connection closed"),
            id));
      }
      DropLive(id);
    }
  }
}

void SessionService::Impl::Handle(const std::shared_ptr<Connection>& conn,
                                  ConnectionState& state,
                                  std::string_view line) {
  absl::StatusOr<Message> parsed = ParseMessage(line);
  if (!parsed.ok()) {
    conn->Send(ErrorMessage(parsed.status()));
    return;
  }
  const Message& m = *parsed;
  if (!IsClientMessage(m.type)) {
    conn->Send(ErrorMessage(
        MakeError(ErrorKind::kProtocolError,
                  absl::StrCat(std::string(MessageTypeName(m.type)),
                               " is sent by the server only")),
        m.session_id));
    return;
  }
  if (m.type == MessageType::kHello) {
    int version = m.body["version"].get<int>();
    if (version != kProtocolVersion) {
      conn->Send(ErrorMessage(MakeError(
          ErrorKind::kVersionMismatch,
          absl::StrCat("server speaks version ", kProtocolVersion,
                       ", client sent ", version))));
      return;
    }
    if (!config.token.empty()) {
      auto token = m.body.find("token");
      if (token == m.body.end() || !token->is_string() ||
          token->get<std::string>() != config.token) {
        conn->Send(ErrorMessage(
            MakeError(ErrorKind::kProtocolError, "bad or missing token")));
        return;
      }
    }
    state.hello = true;
    conn->Send({{"type", "hello"},
                {"version", kProtocolVersion},
                {"engine_version", kEngineVersion}});
    return;
  }
  if (!state.hello) {
    conn->Send(ErrorMessage(
        MakeError(ErrorKind::kProtocolError,
                  absl::StrCat(std::string(MessageTypeName(m.type)), " before hello")),
        m.session_id));
    return;
  }
  switch (m.type) {
    case MessageType::kStartSession:
      HandleStart(conn, state, m);
      break;
    case MessageType::kSamples:
      HandleSamples(conn, state, m, line);
      break;
    case MessageType::kEndSession:
      HandleEnd(conn, state, m, line);
      break;
    case MessageType::kSubscribe:
      HandleSubscribe(conn, state, m);
      break;
    case MessageType::kReplayRequest:
      HandleReplay(conn, m);
      break;
    default:
      break;
  }
}

void SessionService::Impl::HandleStart(const std::shared_ptr<Connection>& conn,
                                       ConnectionState& state,
                                       const Message& m) {
  const std::string& id = m.session_id;
  auto fail = [&](const absl::Status& s) { conn->Send(ErrorMessage(s, id)); };
  if (!SessionStore::IsValidSessionId(id)) {
    return fail(MakeError(ErrorKind::kProtocolError,
                          absl::StrCat("invalid session id '", id, "'")));
  }
  absl::StatusOr<std::unique_ptr<SessionPipeline>> pipeline =
      SessionPipeline::Start(m.body, defaults);
  if (!pipeline.ok()) return fail(pipeline.status());

  auto ls = std::make_shared<LiveSession>();
  {
    std::lock_guard<std::mutex> lock(live_mu);
    if (live.count(id) || store.Exists(id)) {
      return fail(MakeError(ErrorKind::kProtocolError,
                            absl::StrCat("session '", id, "' already exists")));
    }
    absl::StatusOr<std::unique_ptr<RawLogWriter>> raw = store.Create(id);
    if (!raw.ok()) return fail(raw.status());
    ls->raw = *std::move(raw);
    ls->pipeline = *std::move(pipeline);
    ls->owner = conn;
    live[id] = ls;
  }
  std::lock_guard<std::mutex> lock(ls->mu);
  absl::Status wrote = ls->raw->Append(ls->pipeline->start_record().dump());
  if (!wrote.ok()) {
    DropLive(id);
    return fail(wrote);
  }
  state.owned.insert(id);
}

void SessionService::Impl::HandleSamples(
    const std::shared_ptr<Connection>& conn, ConnectionState& state,
    const Message& m, std::string_view line) {
  const std::string& id = m.session_id;
  std::shared_ptr<LiveSession> ls = FindLive(id);
  if (ls == nullptr || !state.owned.count(id)) {
    conn->Send(ErrorMessage(
        MakeError(ErrorKind::kProtocolError, "samples before start_session"),
        id));
    return;
  }
  std::lock_guard<std::mutex> lock(ls->mu);
  absl::StatusOr<std::vector<RawSample>> samples =
      ls->pipeline->CheckSamples(m.body);
  absl::Status status = samples.status();
  if (status.ok()) status = ls->raw->Append(line);
  if (!status.ok()) {
    // The offending batch is not logged; the session ends here.
    ls->Emit(ErrorMessage(status, id));
    DropLive(id);
    state.owned.erase(id);
    return;
  }
  std::optional<int64_t> seq;
  if (auto s = m.body.find("seq"); s != m.body.end() && s->is_number_integer()) {
    seq = s->get<int64_t>();
  }
  ls->pipeline->AddSamples(*samples, seq,
                           [&](ojson e) { ls->Emit(e); });
}

void SessionService::Impl::HandleEnd(const std::shared_ptr<Connection>& conn,
                                     ConnectionState& state, const Message& m,
                                     std::string_view line) {
  const std::string& id = m.session_id;
  std::shared_ptr<LiveSession> ls = FindLive(id);
  if (ls == nullptr || !state.owned.count(id)) {
    conn->Send(ErrorMessage(
        MakeError(ErrorKind::kProtocolError, "end_session before start_session"),
        id));
    return;
  }
  std::lock_guard<std::mutex> lock(ls->mu);
  state.owned.erase(id);
  absl::Status status = ls->raw->Append(line);
  if (!status.ok()) {
    ls->Emit(ErrorMessage(status, id));
    DropLive(id);
    return;
  }
  SessionArtifacts artifacts =
      ls->pipeline->End([&](ojson e) { ls->Emit(e); });
  status = store.WriteArtifacts(id, artifacts.derived_json, artifacts.graph_nt);
  if (!status.ok()) {
    ls->Emit(ErrorMessage(status, id));
  } else {
    ls->Emit(artifacts.summary_message);
  }
  DropLive(id);
}

void SessionService::Impl::HandleSubscribe(
    const std::shared_ptr<Connection>& conn, ConnectionState& state,
    const Message& m) {
  const std::string& id = m.session_id;
  if (std::shared_ptr<LiveSession> ls = FindLive(id)) {
    std::lock_guard<std::mutex> lock(ls->mu);
    // The session may have ended between lookup and lock.
    if (!ls->pipeline->ended()) {
      ls->subscribers.push_back(conn);
      state.subscribed.insert(id);
      return;
    }
  }
  absl::StatusOr<std::string> derived = store.ReadFile(id, kDerivedFile);
  if (!derived.ok()) {
    conn->Send(ErrorMessage(
        MakeError(ErrorKind::kUnknownSession,
                  absl::StrCat("no live or completed session '", id, "'")),
        id));
    return;
  }
  ojson d = ojson::parse(*derived);
  ojson summary = NewMessage(MessageType::kSessionSummary, id);
  summary["summary"] = d["summary"];
  summary["suggestions"] = d["suggestions"];
  conn->Send(summary);
}

void SessionService::Impl::HandleReplay(const std::shared_ptr<Connection>& conn,
                                        const Message& m) {
  const std::string& id = m.session_id;
  auto fail = [&](const absl::Status& s) { conn->Send(ErrorMessage(s, id)); };
  if (FindLive(id) != nullptr) {
    return fail(MakeError(ErrorKind::kProtocolError,
                          absl::StrCat("session '", id, "' is still live")));
  }
  absl::StatusOr<std::string> raw = store.ReadFile(id, kRawLogFile);
  if (!raw.ok()) return fail(raw.status());
  auto speed = m.body.find("speed");
  if (speed == m.body.end() || !speed->is_number()) {
    return fail(MakeError(ErrorKind::kInvalidSpeed, "missing numeric speed"));
  }
  std::optional<Micros> from_t;
  std::optional<Micros> to_t;
  const std::pair<const char*, std::optional<Micros>*> bounds[] = {
      {"from_t", &from_t}, {"to_t", &to_t}};
  for (const auto& [key, slot] : bounds) {
    auto it = m.body.find(key);
    if (it == m.body.end() || it->is_null()) continue;
    if (!it->is_number_integer()) {
      return fail(MakeError(ErrorKind::kProtocolError,
                            absl::StrCat(key, " must be an integer")));
    }
    *slot = it->get<Micros>();
  }
  absl::StatusOr<std::vector<RawSample>> samples = RawLogSamples(*raw);
  if (!samples.ok()) return fail(samples.status());
  absl::StatusOr<std::vector<ReplayStep>> plan =
      PlanReplay(*samples, speed->get<double>(), from_t, to_t);
  if (!plan.ok()) return fail(plan.status());
  size_t index = 0;
  size_t sent = RunReplay(
      *plan,
      [&](const ReplayStep& step) {
        ojson e = NewMessage(MessageType::kReplayEvent, id);
        e["index"] = index++;
        e["offset_us"] = step.offset_us;
        e["t"] = step.sample.t;
        e["sample"] = SampleToJson(step.sample);
        conn->Send(e);
      },
      &stopping);
  ojson done = NewMessage(MessageType::kReplayEvent, id);
  done["done"] = true;
  done["count"] = sent;
  conn->Send(done);
}

void SessionService::Impl::SetupHttp() {
  auto send_error = [](httplib::Response& res, int code,
                       const absl::Status& s) {
    res.status = code;
    res.set_content(ErrorMessage(s).dump(), "application/json");
  };
  if (!config.token.empty()) {
    http.set_pre_routing_handler([this, send_error](const httplib::Request& req,
                                                    httplib::Response& res) {
      if (req.get_header_value("Authorization") != "Bearer " + config.token) {
        send_error(res, 401,
                   MakeError(ErrorKind::kProtocolError, "bad or missing token"));
        return httplib::Server::HandlerResponse::Handled;
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });
  }
  http.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    ojson sessions = ojson::array();
    for (const std::string& id : store.List()) {
      std::string status = FindLive(id) != nullptr ? "live"
                           : store.Complete(id)    ? "complete"
                                                   : "incomplete";
      std::string test_id;
      if (auto raw = store.ReadFile(id, kRawLogFile); raw.ok()) {
        auto first = nlohmann::json::parse(raw->substr(0, raw->find('\n')),
                                           nullptr, false);
        if (first.is_object() && first.contains("test_id") &&
            first["test_id"].is_string()) {
          test_id = first["test_id"].get<std::string>();
        }
      }
      sessions.push_back(
          {{"session_id", id}, {"test_id", test_id}, {"status", status}});
    }
    res.set_content(ojson{{"sessions", sessions}}.dump(), "application/json");
  });
  http.Get(R"(/sessions/([A-Za-z0-9._-]+)/summary)",
           [this, send_error](const httplib::Request& req,
                              httplib::Response& res) {
             std::string id = req.matches[1];
             absl::StatusOr<std::string> derived =
                 store.ReadFile(id, kDerivedFile);
             if (!derived.ok()) return send_error(res, 404, derived.status());
             ojson d = ojson::parse(*derived);
             ojson out = {{"session_id", id},
                          {"test_id", d["test_id"]},
                          {"summary", d["summary"]},
                          {"suggestions", d["suggestions"]}};
             res.set_content(out.dump(), "application/json");
           });
  http.Get(R"(/sessions/([A-Za-z0-9._-]+)/graph)",
           [this, send_error](const httplib::Request& req,
                              httplib::Response& res) {
             absl::StatusOr<std::string> graph =
                 store.ReadFile(req.matches[1].str(), kGraphFile);
             if (!graph.ok()) return send_error(res, 404, graph.status());
             res.set_content(*graph, "application/n-triples");
           });
}

SessionService::SessionService(ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

SessionService::~SessionService() { Stop(); }

absl::Status SessionService::Start() {
  INKASSESS_RETURN_IF_ERROR(ValidateConfig(impl_->config));
  INKASSESS_RETURN_IF_ERROR(impl_->Bind());
  impl_->SetupHttp();
  const std::string& host = impl_->config.host;
  if (impl_->config.http_port == 0) {
    impl_->bound_http_port = impl_->http.bind_to_any_port(host);
  } else if (impl_->http.bind_to_port(host, impl_->config.http_port)) {
    impl_->bound_http_port = impl_->config.http_port;
  } else {
    impl_->bound_http_port = -1;
  }
  if (impl_->bound_http_port < 0) {
    ::close(impl_->listen_fd);
    impl_->listen_fd = -1;
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot bind HTTP port ",
                                  impl_->config.http_port));
  }
  impl_->http_thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->acceptor = std::thread([this] { impl_->AcceptLoop(); });
  return absl::OkStatus();
}

void SessionService::Stop() {
  if (impl_->stopping.exchange(true)) return;
  if (impl_->listen_fd >= 0) {
    ::shutdown(impl_->listen_fd, SHUT_RDWR);
    ::close(impl_->listen_fd);
  }
  if (impl_->acceptor.joinable()) impl_->acceptor.join();
  impl_->http.stop();
  if (impl_->http_thread.joinable()) impl_->http_thread.join();
  std::lock_guard<std::mutex> lock(impl_->clients_mu);
  for (auto& client : impl_->clients) client.conn->Shutdown();
  for (auto& client : impl_->clients) {
    if (client.reader.joinable()) client.reader.join();
  }
  impl_->clients.clear();
}

int SessionService::port() const { return impl_->bound_port; }
int SessionService::http_port() const { return impl_->bound_http_port; }
const SessionStore& SessionService::store() const { return impl_->store; }

}  // namespace inkassess
