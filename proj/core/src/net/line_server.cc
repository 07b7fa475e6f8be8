// Copyright 2026 The MCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcd/net/line_server.h"

#include <fcntl.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <arpa/inet.h>
#include <netinet/in.h>

#include <cerrno>
#include <cstring>

#include "mcd/error.h"
#include "mcd/wire/messages.h"
#include "net/socket_util.h"

namespace mcd {

bool RateLimiter::allow(const std::string& key, std::chrono::steady_clock::time_point now) {
  if (!enabled()) return true;
  std::lock_guard lock(mu_);
  auto [it, inserted] = buckets_.try_emplace(key, Bucket{rate_, now});
  Bucket& b = it->second;
  if (!inserted) {
    double elapsed = std::chrono::duration<double>(now - b.last).count();
    b.tokens = std::min(rate_, b.tokens + elapsed * rate_);
    b.last = now;
  }
  if (b.tokens < 1.0) return false;
  b.tokens -= 1.0;
  return true;
}

LineServer::LineServer(Endpoint endpoint, LineHandler& handler, LineServerOptions options)
    : endpoint_(std::move(endpoint)),
      handler_(handler),
      options_(options),
      limiter_(options.rate_limit) {
  if (options_.workers == 0) options_.workers = 1;
}

LineServer::~LineServer() { stop(); }

void LineServer::start() {
  if (running_) return;
  listen_fd_ = net::listen_endpoint(endpoint_, SOMAXCONN);
  if (::pipe2(wake_pipe_, O_CLOEXEC) != 0) {
    ::close(listen_fd_);
    throw Error(Errc::kTransport, "pipe: " + std::string(std::strerror(errno)));
  }
  running_ = true;
  for (std::size_t i = 0; i < options_.workers; ++i) workers_.emplace_back([this] { worker_loop(); });
  acceptor_ = std::thread([this] { accept_loop(); });
}

void LineServer::stop() {
  if (!running_.exchange(false)) return;
  char c = 0;
  [[maybe_unused]] ssize_t ignored = ::write(wake_pipe_[1], &c, 1);
  if (acceptor_.joinable()) acceptor_.join();
  cv_.notify_all();
  for (auto& w : workers_) w.join();
  workers_.clear();
  for (auto& [fd, peer] : pending_) ::close(fd);
  pending_.clear();
  ::close(listen_fd_);
  ::close(wake_pipe_[0]);
  ::close(wake_pipe_[1]);
  listen_fd_ = wake_pipe_[0] = wake_pipe_[1] = -1;
  if (endpoint_.kind == Endpoint::Kind::kUnix) ::unlink(endpoint_.path.c_str());
}

namespace {

std::string peer_key(const sockaddr_storage& addr) {
  char buf[INET6_ADDRSTRLEN] = {};
  if (addr.ss_family == AF_INET) {
    ::inet_ntop(AF_INET, &reinterpret_cast<const sockaddr_in*>(&addr)->sin_addr, buf, sizeof(buf));
    return buf;
  }
  if (addr.ss_family == AF_INET6) {
    ::inet_ntop(AF_INET6, &reinterpret_cast<const sockaddr_in6*>(&addr)->sin6_addr, buf,
                sizeof(buf));
    return buf;
  }
  return "local";
}

}  // namespace

void LineServer::accept_loop() {
  pollfd fds[2] = {{listen_fd_, POLLIN, 0}, {wake_pipe_[0], POLLIN, 0}};
  while (running_) {
    int rc = ::poll(fds, 2, -1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (fds[1].revents != 0) break;
    if ((fds[0].revents & POLLIN) == 0) continue;
    sockaddr_storage addr{};
    socklen_t len = sizeof(addr);
    int fd = ::accept4(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len, SOCK_CLOEXEC);
    if (fd < 0) continue;
    {
      std::lock_guard lock(mu_);
      pending_.emplace_back(fd, peer_key(addr));
    }
    cv_.notify_one();
  }
}

void LineServer::worker_loop() {
  for (;;) {
    std::pair<int, std::string> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [this] { return !pending_.empty() || !running_; });
      if (pending_.empty()) return;
      job = std::move(pending_.front());
      pending_.pop_front();
    }
    serve(job.first, job.second);
  }
}

void LineServer::serve(int fd, const std::string& peer) {
  net::UniqueFd guard(fd);
  net::set_timeouts(fd, options_.io_timeout);
  auto line = net::read_line(fd, options_.max_line_bytes);
  std::string response;
  if (!line) {
    response = encode_error(Errc::kMalformed);
  } else if (!limiter_.allow(peer, std::chrono::steady_clock::now())) {
    response = encode_error(Errc::kRate);
  } else {
    try {
      response = handler_.handle(*line);
    } catch (const std::exception&) {
      // Internal failure: close without a response; the client retries.
      return;
    }
  }
  response.push_back('\n');
  ++served_;
  net::write_all(fd, response);
}

}  // namespace mcd
