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

#include "gestmpc/runtime/transport.hpp"

#include <string>

#include "gestmpc/error.hpp"

namespace gestmpc::runtime {

void BlockingQueue::push(Frame f) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    items_.push_back(std::move(f));
  }
  cv_.notify_one();
}

std::optional<Frame> BlockingQueue::pop() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
  if (items_.empty()) return std::nullopt;
  Frame f = std::move(items_.front());
  items_.pop_front();
  return f;
}

void BlockingQueue::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

class InProcessTransport final : public Transport {
 public:
  InProcessTransport(InProcessHub& hub, int self) : hub_(hub), self_(self) {}

  int self() const override { return self_; }
  std::size_t endpoints() const override { return hub_.n_; }

  void send(int to, Frame frame) override {
    hub_.queue(self_, to).push(std::move(frame));
  }

  Frame recv(int from) override {
    auto f = hub_.queue(from, self_).pop();
    if (!f)
      fail(ErrorKind::kSessionAborted,
           "channel from endpoint " + std::to_string(from) + " closed");
    return std::move(*f);
  }

  void close() override { hub_.close_all(); }

 private:
  InProcessHub& hub_;
  int self_;
};

InProcessHub::InProcessHub(std::size_t endpoints) : n_(endpoints) {
  require(endpoints >= 2, ErrorKind::kInvalidArgument, "a hub needs two endpoints");
  for (std::size_t i = 0; i < n_ * n_; ++i)
    queues_.push_back(std::make_unique<BlockingQueue>());
}

std::unique_ptr<Transport> InProcessHub::endpoint(int id) {
  require(id >= 0 && static_cast<std::size_t>(id) < n_, ErrorKind::kInvalidArgument,
          "endpoint id out of range");
  return std::make_unique<InProcessTransport>(*this, id);
}

void InProcessHub::close_all() {
  for (auto& q : queues_) q->close();
}

BlockingQueue& InProcessHub::queue(int from, int to) {
  require(from >= 0 && to >= 0 && static_cast<std::size_t>(from) < n_ &&
              static_cast<std::size_t>(to) < n_ && from != to,
          ErrorKind::kInvalidArgument, "no channel between these endpoints");
  return *queues_[static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to)];
}

Endpoint::Endpoint(std::unique_ptr<Transport> transport, std::uint64_t session)
    : transport_(std::move(transport)),
      session_(session),
      send_seq_(transport_->endpoints(), 0),
      recv_seq_(transport_->endpoints(), 0) {}

void Endpoint::send(int to, MessageKind kind, std::vector<std::uint8_t> payload) {
  Message m{kind, session_, ++send_seq_.at(static_cast<std::size_t>(to)),
            std::move(payload)};
  auto frame = encode_frame(m);
  ++frames_sent_;
  bytes_sent_ += frame.size();
  transport_->send(to, std::move(frame));
}

Message Endpoint::recv(int from) {
  const auto frame = transport_->recv(from);
  Message m = decode_frame(frame);
  require(m.session == session_, ErrorKind::kProtocol,
          "frame from endpoint " + std::to_string(from) + " belongs to session " +
              std::to_string(m.session));
  auto& last = recv_seq_.at(static_cast<std::size_t>(from));
  require(m.seq > last, ErrorKind::kProtocol,
          "sequence number from endpoint " + std::to_string(from) +
              " did not increase");
  last = m.seq;
  inbound_.push_back(m.kind);
  if (tap_) tap_(from, m);
  return m;
}

Message Endpoint::recv(int from, MessageKind expected) {
  Message m = recv(from);
  require(m.kind == expected, ErrorKind::kProtocol,
          "expected " + std::string(to_string(expected)) + " from endpoint " +
              std::to_string(from) + ", got " + std::string(to_string(m.kind)));
  return m;
}

}  // namespace gestmpc::runtime
