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


#ifndef MCD_NET_LINE_SERVER_H_
#define MCD_NET_LINE_SERVER_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mcd/net/transport.h"

namespace mcd {

// Token bucket per key: `rate` tokens per second, burst of `rate`.
class RateLimiter {
 public:
  explicit RateLimiter(double rate) : rate_(rate) {}
  bool enabled() const { return rate_ > 0; }
  bool allow(const std::string& key, std::chrono::steady_clock::time_point now);

 private:
  struct Bucket {
    double tokens;
    std::chrono::steady_clock::time_point last;
  };
  double rate_;
  std::mutex mu_;
  std::map<std::string, Bucket> buckets_;
};

struct LineServerOptions {
  std::size_t workers = 4;
  // Requests per second per peer address; 0 disables limiting.
  double rate_limit = 0;
  std::size_t max_line_bytes = 1 << 20;
  std::chrono::milliseconds io_timeout{10000};
};

// Accepts connections, reads one request line from each, writes one response
// line and closes the connection.
class LineServer {
 public:
  LineServer(Endpoint endpoint, LineHandler& handler, LineServerOptions options = {});
  ~LineServer();
  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  // Binds and starts serving; throws Error(kTransport).
  void start();
  void stop();
  // The bound endpoint (resolves tcp port 0).
  const Endpoint& endpoint() const { return endpoint_; }
  // Responses handed to the socket; counted before the write completes.
  std::uint64_t served() const { return served_.load(); }

 private:
  void accept_loop();
  void worker_loop();
  void serve(int fd, const std::string& peer);

  Endpoint endpoint_;
  LineHandler& handler_;
  LineServerOptions options_;
  RateLimiter limiter_;

  int listen_fd_ = -1;
  int wake_pipe_[2] = {-1, -1};
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> served_{0};
  std::thread acceptor_;
  std::vector<std::thread> workers_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::pair<int, std::string>> pending_;
};

}  // namespace mcd

#endif  // MCD_NET_LINE_SERVER_H_
