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


#ifndef MCD_SRC_NET_SOCKET_UTIL_H_
#define MCD_SRC_NET_SOCKET_UTIL_H_

#include <unistd.h>

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "mcd/net/transport.h"

namespace mcd::net {

class UniqueFd {
 public:
  explicit UniqueFd(int fd = -1) : fd_(fd) {}
  ~UniqueFd() {
    if (fd_ >= 0) ::close(fd_);
  }
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

// Returns a connected socket or -1 with errno set.
int connect_endpoint(const Endpoint& e);
// Returns a listening socket; throws Error(kTransport). Fills in the bound
// tcp port when e.port == 0.
int listen_endpoint(Endpoint& e, int backlog);

void set_timeouts(int fd, std::chrono::milliseconds timeout);
bool write_all(int fd, std::string_view data);
// Reads up to the first '\n' (excluded). nullopt on EOF before a newline,
// timeout, error or an over-long line.
std::optional<std::string> read_line(int fd, std::size_t max_bytes);

}  // namespace mcd::net

#endif  // MCD_SRC_NET_SOCKET_UTIL_H_
