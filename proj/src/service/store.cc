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

#include "inkassess/service/store.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "inkassess/status.h"

namespace inkassess {

namespace fs = std::filesystem;

RawLogWriter::~RawLogWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

absl::Status RawLogWriter::Append(std::string_view line) {
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
      std::fputc('\n', file_) == EOF || std::fflush(file_) != 0) {
    return MakeError(ErrorKind::kIoError, "raw log write failed");
  }
  return absl::OkStatus();
}

bool SessionStore::IsValidSessionId(std::string_view id) {
  if (id.empty() || id.size() > 128 || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
  });
}

std::string SessionStore::SessionDir(std::string_view id) const {
  return (fs::path(root_) / std::string(id)).string();
}

absl::StatusOr<std::unique_ptr<RawLogWriter>> SessionStore::Create(
    std::string_view id) {
  if (!IsValidSessionId(id)) {
    return MakeError(ErrorKind::kProtocolError,
                     absl::StrCat("invalid session id '", std::string(id), "'"));
  }
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot create ", root_, ": ", ec.message()));
  }
  fs::path dir = SessionDir(id);
  if (!fs::create_directory(dir, ec)) {
    if (ec) {
      return MakeError(ErrorKind::kIoError, absl::StrCat("cannot create ",
                                                         dir.string(), ": ",
                                                         ec.message()));
    }
    return MakeError(ErrorKind::kProtocolError,
                     absl::StrCat("session '", std::string(id),
                                  "' already exists"));
  }
  std::FILE* f = std::fopen((dir / kRawLogFile).c_str(), "ax");
  if (f == nullptr) {
    return MakeError(ErrorKind::kIoError, "cannot open raw log");
  }
  return std::make_unique<RawLogWriter>(f);
}

bool SessionStore::Exists(std::string_view id) const {
  return IsValidSessionId(id) && fs::exists(fs::path(SessionDir(id)) / kRawLogFile);
}

bool SessionStore::Complete(std::string_view id) const {
  return IsValidSessionId(id) &&
         fs::exists(fs::path(SessionDir(id)) / kDerivedFile);
}

absl::Status WriteFileAtomic(const std::string& path, std::string_view text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) return MakeError(ErrorKind::kIoError, "cannot write " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot rename to ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status SessionStore::WriteArtifacts(std::string_view id,
                                          std::string_view derived,
                                          std::string_view graph) {
  fs::path dir = SessionDir(id);
  // Graph first: derived.json marks the session complete.
  INKASSESS_RETURN_IF_ERROR(WriteFileAtomic((dir / kGraphFile).string(), graph));
  return WriteFileAtomic((dir / kDerivedFile).string(), derived);
}

absl::StatusOr<std::string> SessionStore::ReadFile(
    std::string_view id, std::string_view name) const {
  if (!IsValidSessionId(id)) {
    return MakeError(ErrorKind::kUnknownSession,
                     absl::StrCat("invalid session id '", std::string(id), "'"));
  }
  fs::path path = fs::path(SessionDir(id)) / std::string(name);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kUnknownSession,
                     absl::StrCat("no ", std::string(name), " for session '",
                                  std::string(id), "'"));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> SessionStore::List() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    std::string name = entry.path().filename().string();
    if (entry.is_directory() && IsValidSessionId(name) &&
        fs::exists(entry.path() / kRawLogFile)) {
      ids.push_back(name);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace inkassess
