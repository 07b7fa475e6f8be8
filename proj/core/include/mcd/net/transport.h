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


#ifndef MCD_NET_TRANSPORT_H_
#define MCD_NET_TRANSPORT_H_

#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace mcd {

// "unix:/path/to/socket" or "tcp:host:port".
struct Endpoint {
  enum class Kind { kUnix, kTcp };

  Kind kind = Kind::kUnix;
  std::string path;
  std::string host;
  std::uint16_t port = 0;

  // Throws Error(kInvalidArgument).
  static Endpoint parse(std::string_view spec);
  std::string str() const;
};

// Server-side request handler. It sees the request line and nothing else:
// no peer address, no connection handle.
class LineHandler {
 public:
  virtual ~LineHandler() = default;
  virtual std::string handle(std::string_view line) = 0;
};

// Client side of a request/response exchange. Each call is independent.
class Transport {
 public:
  virtual ~Transport() = default;
  // Throws Error(kTransport) when the exchange fails.
  virtual std::string round_trip(std::string_view request) = 0;
};

// Opens a fresh connection for every message.
class SocketTransport final : public Transport {
 public:
  explicit SocketTransport(Endpoint endpoint,
                           std::chrono::milliseconds timeout = std::chrono::seconds(30));
  std::string round_trip(std::string_view request) override;
  const Endpoint& endpoint() const { return endpoint_; }

 private:
  Endpoint endpoint_;
  std::chrono::milliseconds timeout_;
};

// Calls a handler directly.
class InProcessTransport final : public Transport {
 public:
  explicit InProcessTransport(LineHandler& handler) : handler_(handler) {}
  std::string round_trip(std::string_view request) override { return handler_.handle(request); }

 private:
  LineHandler& handler_;
};

struct TranscriptEntry {
  std::string request;
  std::string response;
};

class Transcript {
 public:
  void record(std::string request, std::string response);
  std::vector<TranscriptEntry> entries() const;
  std::size_t messages() const;
  std::size_t bytes() const;
  void clear();

 private:
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
  std::size_t bytes_ = 0;
};

// Forwards to another transport and logs both directions.
class RecordingTransport final : public Transport {
 public:
  RecordingTransport(Transport& inner, Transcript& transcript)
      : inner_(inner), transcript_(transcript) {}
  std::string round_trip(std::string_view request) override;

 private:
  Transport& inner_;
  Transcript& transcript_;
};

}  // namespace mcd

#endif  // MCD_NET_TRANSPORT_H_
