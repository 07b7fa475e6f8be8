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

#include "mcd/net/transport.h"

#include <netdb.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "mcd/error.h"
#include "net/socket_util.h"

namespace mcd {

Endpoint Endpoint::parse(std::string_view spec) {
  Endpoint e;
  if (spec.starts_with("unix:")) {
    e.kind = Kind::kUnix;
    e.path = std::string(spec.substr(5));
    if (e.path.empty() || e.path.size() >= sizeof(sockaddr_un::sun_path)) {
      throw Error(Errc::kInvalidArgument, "bad unix socket path");
    }
    return e;
  }
  if (spec.starts_with("tcp:")) {
    std::string_view rest = spec.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(Errc::kInvalidArgument, "tcp endpoint must be tcp:host:port");
    }
    e.kind = Kind::kTcp;
    e.host = std::string(rest.substr(0, colon));
    std::string port(rest.substr(colon + 1));
    char* end = nullptr;
    long v = std::strtol(port.c_str(), &end, 10);
    if (port.empty() || *end != '\0' || v < 0 || v > 65535) {
      throw Error(Errc::kInvalidArgument, "bad tcp port");
    }
    e.port = static_cast<std::uint16_t>(v);
    return e;
  }
  throw Error(Errc::kInvalidArgument, "endpoint must start with unix: or tcp:");
}

std::string Endpoint::str() const {
  if (kind == Kind::kUnix) return "unix:" + path;
  return "tcp:" + host + ":" + std::to_string(port);
}

SocketTransport::SocketTransport(Endpoint endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::string SocketTransport::round_trip(std::string_view request) {
  constexpr int kAttempts = 50;
  for (int attempt = 0;; ++attempt) {
    int fd = net::connect_endpoint(endpoint_);
    if (fd < 0) {
      int err = errno;
      if (attempt + 1 < kAttempts && (err == EAGAIN || err == ECONNREFUSED || err == ENOENT ||
                                      err == EINTR || err == ECONNRESET)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(2 * (attempt + 1)));
        continue;
      }
      throw Error(Errc::kTransport, "connect " + endpoint_.str() + ": " + std::strerror(err));
    }
    net::UniqueFd guard(fd);
    net::set_timeouts(fd, timeout_);
    std::string out(request);
    out.push_back('\n');
    if (!net::write_all(fd, out)) {
      throw Error(Errc::kTransport, "send failed: " + std::string(std::strerror(errno)));
    }
    auto line = net::read_line(fd, 1 << 24);
    if (!line) throw Error(Errc::kTransport, "connection closed before a response");
    return *line;
  }
}

void Transcript::record(std::string request, std::string response) {
  std::lock_guard lock(mu_);
  bytes_ += request.size() + response.size() + 2;
  entries_.push_back({std::move(request), std::move(response)});
}

std::vector<TranscriptEntry> Transcript::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::size_t Transcript::messages() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t Transcript::bytes() const {
  std::lock_guard lock(mu_);
  return bytes_;
}

void Transcript::clear() {
  std::lock_guard lock(mu_);
  entries_.clear();
  bytes_ = 0;
}

std::string RecordingTransport::round_trip(std::string_view request) {
  std::string response = inner_.round_trip(request);
  transcript_.record(std::string(request), response);
  return response;
}

}  // namespace mcd
