// Copyright 2026 The Textaudit Authors
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
//

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "json.hpp"
#include "textaudit/modeliface.h"
#include "textaudit/strings.h"

extern char** environ;

namespace textaudit {
namespace {

class SubprocessBackend : public ScoringBackend {
 public:
  SubprocessBackend(std::string command, std::chrono::milliseconds timeout)
      : command_(std::move(command)), timeout_(timeout) {
    // Writes to a dead child must surface as EPIPE, not kill the auditor.
    signal(SIGPIPE, SIG_IGN);
  }

  ~SubprocessBackend() override { Stop(); }

  absl::StatusOr<std::vector<double>> Score(
      const std::vector<std::string>& texts) override {
    std::lock_guard<std::mutex> lock(mutex_);
    if (pid_ < 0) {
      if (absl::Status s = Start(); !s.ok()) return s;
    }
    std::vector<double> out;
    out.reserve(texts.size());
    // Lockstep: one request line, one response line.
    for (const std::string& text : texts) {
      const std::string request =
          nlohmann::json(text).dump(-1, ' ', false,
                                    nlohmann::json::error_handler_t::replace) +
          "\n";
      if (absl::Status s = WriteAll(request); !s.ok()) {
        Stop();
        return s;
      }
      absl::StatusOr<std::string> line = ReadLine();
      if (!line.ok()) {
        Stop();
        return line.status();
      }
      const std::string_view field = StripAsciiWhitespace(*line);
      double p = 0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), p);
      if (field.empty() || ec != std::errc() ||
          ptr != field.data() + field.size()) {
        Stop();
        return absl::DataLossError(StrCat(
            "subprocess protocol error: non-numeric line \"", *line, "\""));
      }
      out.push_back(p);
    }
    return out;
  }

 private:
  absl::Status Start() {
    int to_child[2];
    int from_child[2];
    if (pipe2(to_child, O_CLOEXEC) != 0) {
      return absl::UnavailableError(StrCat("pipe: ", std::strerror(errno)));
    }
    if (pipe2(from_child, O_CLOEXEC) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      return absl::UnavailableError(StrCat("pipe: ", std::strerror(errno)));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
    std::string shell = "/bin/sh";
    std::string flag = "-c";
    char* argv[] = {shell.data(), flag.data(), command_.data(), nullptr};
    // Own process group, so a timeout kills the command's children too.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);
    pid_t pid = -1;
    const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
    posix_spawnattr_destroy(&attr);
    posix_spawn_file_actions_destroy(&actions);
    close(to_child[0]);
    close(from_child[1]);
    if (rc != 0) {
      close(to_child[1]);
      close(from_child[0]);
      return absl::UnavailableError(
          StrCat("cannot start \"", command_, "\": ", std::strerror(rc)));
    }
    pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    buffer_.clear();
    return absl::OkStatus();
  }

  void Stop() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
      // EOF on stdin asks the child to exit; give it a moment.
      for (int i = 0; i < 100; ++i) {
        if (waitpid(pid_, nullptr, WNOHANG) == pid_) {
          pid_ = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      kill(-pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
  }

  absl::Status WriteAll(const std::string& data) {
    std::size_t written = 0;
    while (written < data.size()) {
      const ssize_t n =
          write(to_child_, data.data() + written, data.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        return absl::UnavailableError(
            StrCat("write to scoring subprocess failed: ", std::strerror(errno)));
      }
      written += static_cast<std::size_t>(n);
    }
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> ReadLine() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    while (true) {
      const std::size_t newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        std::string line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        return line;
      }
      const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (remaining.count() <= 0) {
        return absl::DeadlineExceededError(
            StrCat("scoring subprocess did not answer within ",
                   timeout_.count(), " ms"));
      }
      pollfd fd{from_child_, POLLIN, 0};
      const int ready = poll(&fd, 1, static_cast<int>(remaining.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        return absl::UnavailableError(StrCat("poll: ", std::strerror(errno)));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = read(from_child_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        return absl::UnavailableError(StrCat("read: ", std::strerror(errno)));
      }
      if (n == 0) {
        return absl::UnavailableError(
            "scoring subprocess closed its output before answering");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string command_;
  std::chrono::milliseconds timeout_;
  std::mutex mutex_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace

std::unique_ptr<ScoringBackend> MakeSubprocessBackend(
    std::string command, std::chrono::milliseconds timeout) {
  return std::make_unique<SubprocessBackend>(std::move(command), timeout);
}

}  // namespace textaudit
