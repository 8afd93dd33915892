// Copyright 2026 The gestmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gestmpc/runtime/message.hpp"

namespace gestmpc::runtime {

using Frame = std::vector<std::uint8_t>;

// FIFO handing frames from one producer to one consumer. After close(),
// queued frames are still delivered; pop() then returns nullopt.
class BlockingQueue {
 public:
  void push(Frame f);
  std::optional<Frame> pop();
  void close();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Frame> items_;
  bool closed_ = false;
};

// Point-to-point frame delivery between numbered endpoints. Parties are
// 0..n-1 and the dealer is endpoint n. Delivery is FIFO per channel.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual int self() const = 0;
  virtual std::size_t endpoints() const = 0;
  virtual void send(int to, Frame frame) = 0;
  // Blocks for the next frame from `from`; throws kSessionAborted once the
  // channel is closed and drained.
  virtual Frame recv(int from) = 0;
  // Tears the channels down so blocked peers wake up.
  virtual void close() = 0;
};

// All endpoints in one process, connected by queues.
class InProcessHub {
 public:
  explicit InProcessHub(std::size_t endpoints);

  std::unique_ptr<Transport> endpoint(int id);
  void close_all();

 private:
  friend class InProcessTransport;
  BlockingQueue& queue(int from, int to);

  std::size_t n_;
  std::vector<std::unique_ptr<BlockingQueue>> queues_;
};

struct TcpAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

// Parses "host:port,host:port,..." (the last entry is the dealer).
std::vector<TcpAddress> parse_endpoints(const std::string& spec);

// A bound, listening socket. Port 0 picks a free port.
class TcpListener {
 public:
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(TcpListener&& o) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  TcpListener& operator=(TcpListener&&) = delete;

  std::uint16_t port() const { return port_; }
  int release();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Builds the full mesh: endpoint `self` dials every lower id and accepts one
// connection from every higher id, then starts one reader per socket.
std::unique_ptr<Transport> connect_tcp(int self, const std::vector<TcpAddress>& addresses,
                                       TcpListener listener, double timeout_s = 30.0);

// Session-level messaging over a transport: stamps session id and
// per-channel sequence numbers, validates them on receipt and logs inbound
// kinds.
class Endpoint {
 public:
  using Tap = std::function<void(int from, const Message&)>;

  Endpoint(std::unique_ptr<Transport> transport, std::uint64_t session);

  int self() const { return transport_->self(); }
  std::size_t endpoints() const { return transport_->endpoints(); }

  void send(int to, MessageKind kind, std::vector<std::uint8_t> payload);
  Message recv(int from);
  Message recv(int from, MessageKind expected);

  void set_tap(Tap tap) { tap_ = std::move(tap); }
  const std::vector<MessageKind>& inbound_kinds() const { return inbound_; }
  std::uint64_t frames_sent() const { return frames_sent_; }
  std::uint64_t bytes_sent() const { return bytes_sent_; }
  void close() { transport_->close(); }

 private:
  std::unique_ptr<Transport> transport_;
  std::uint64_t session_;
  std::vector<std::uint64_t> send_seq_;
  std::vector<std::uint64_t> recv_seq_;
  std::vector<MessageKind> inbound_;
  Tap tap_;
  std::uint64_t frames_sent_ = 0;
  std::uint64_t bytes_sent_ = 0;
};

}  // namespace gestmpc::runtime
