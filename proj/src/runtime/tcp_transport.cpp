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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>
#include <thread>

#include "gestmpc/bytes.hpp"
#include "gestmpc/error.hpp"
#include "gestmpc/runtime/transport.hpp"

namespace gestmpc::runtime {

namespace {

[[noreturn]] void sys_fail(const std::string& what) {
  fail(ErrorKind::kIo, what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const TcpAddress& a) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(a.port);
  if (inet_pton(AF_INET, a.host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  addrinfo* res = nullptr;
  if (getaddrinfo(a.host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr)
    fail(ErrorKind::kIo, "cannot resolve host " + a.host);
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  freeaddrinfo(res);
  return addr;
}

bool write_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t k = ::send(fd, data, n, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += k;
    n -= static_cast<std::size_t>(k);
  }
  return true;
}

bool read_all(int fd, std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t k = ::recv(fd, data, n, 0);
    if (k == 0) return false;
    if (k < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += k;
    n -= static_cast<std::size_t>(k);
  }
  return true;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

class TcpTransport final : public Transport {
 public:
  TcpTransport(int self, std::vector<int> sockets)
      : self_(self), sockets_(std::move(sockets)), inbox_(sockets_.size()),
        send_mu_(sockets_.size()) {
    for (std::size_t peer = 0; peer < sockets_.size(); ++peer) {
      inbox_[peer] = std::make_unique<BlockingQueue>();
      if (sockets_[peer] < 0) continue;
      readers_.emplace_back([this, peer] { read_loop(peer); });
    }
  }

  ~TcpTransport() override {
    close();
    for (auto& t : readers_) t.join();
    for (int fd : sockets_)
      if (fd >= 0) ::close(fd);
  }

  int self() const override { return self_; }
  std::size_t endpoints() const override { return sockets_.size(); }

  void send(int to, Frame frame) override {
    const int fd = socket_for(to);
    std::lock_guard lock(send_mu_[static_cast<std::size_t>(to)]);
    if (!write_all(fd, frame.data(), frame.size()))
      fail(ErrorKind::kSessionAborted,
           "connection to endpoint " + std::to_string(to) + " lost while sending");
  }

  Frame recv(int from) override {
    socket_for(from);
    auto f = inbox_[static_cast<std::size_t>(from)]->pop();
    if (!f)
      fail(ErrorKind::kSessionAborted,
           "connection to endpoint " + std::to_string(from) + " closed");
    return std::move(*f);
  }

  void close() override {
    for (std::size_t i = 0; i < sockets_.size(); ++i) {
      if (sockets_[i] >= 0) ::shutdown(sockets_[i], SHUT_RDWR);
      inbox_[i]->close();
    }
  }

 private:
  int socket_for(int peer) const {
    require(peer >= 0 && static_cast<std::size_t>(peer) < sockets_.size() &&
                sockets_[static_cast<std::size_t>(peer)] >= 0,
            ErrorKind::kInvalidArgument, "no connection to that endpoint");
    return sockets_[static_cast<std::size_t>(peer)];
  }

  void read_loop(std::size_t peer) {
    const int fd = sockets_[peer];
    for (;;) {
      std::uint8_t len_be[4];
      if (!read_all(fd, len_be, 4)) break;
      const std::uint32_t len = (std::uint32_t{len_be[0]} << 24) |
                                (std::uint32_t{len_be[1]} << 16) |
                                (std::uint32_t{len_be[2]} << 8) | len_be[3];
      if (len < kFrameHeader - 4 || len >= kMaxFrame) break;
      Frame frame(4 + std::size_t{len});
      std::memcpy(frame.data(), len_be, 4);
      if (!read_all(fd, frame.data() + 4, len)) break;
      inbox_[peer]->push(std::move(frame));
    }
    inbox_[peer]->close();
  }

  int self_;
  std::vector<int> sockets_;
  std::vector<std::unique_ptr<BlockingQueue>> inbox_;
  std::vector<std::mutex> send_mu_;
  std::vector<std::thread> readers_;
};

int dial(const TcpAddress& a, double timeout_s) {
  const auto addr = resolve(a);
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeout_s);
  for (;;) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) sys_fail("socket");
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) == 0)
      return fd;
    ::close(fd);
    if (std::chrono::steady_clock::now() > deadline)
      fail(ErrorKind::kIo, "cannot reach " + a.host + ":" + std::to_string(a.port));
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace

std::vector<TcpAddress> parse_endpoints(const std::string& spec) {
  std::vector<TcpAddress> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.rfind(':');
    require(colon != std::string::npos && colon > 0, ErrorKind::kInvalidArgument,
            "endpoint '" + item + "' is not host:port");
    TcpAddress a;
    a.host = item.substr(0, colon);
    int port = 0;
    try {
      port = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      port = -1;
    }
    require(port > 0 && port < 65536, ErrorKind::kInvalidArgument,
            "endpoint '" + item + "' has an invalid port");
    a.port = static_cast<std::uint16_t>(port);
    out.push_back(a);
  }
  require(out.size() >= 3, ErrorKind::kInvalidArgument,
          "need at least two parties and a dealer endpoint");
  return out;
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) sys_fail("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  auto addr = resolve({host, port});
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd_);
    sys_fail("bind " + host + ":" + std::to_string(port));
  }
  if (::listen(fd_, 16) != 0) {
    ::close(fd_);
    sys_fail("listen");
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpListener::TcpListener(TcpListener&& o) noexcept : fd_(o.fd_), port_(o.port_) {
  o.fd_ = -1;
}

int TcpListener::release() {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

std::unique_ptr<Transport> connect_tcp(int self, const std::vector<TcpAddress>& addresses,
                                       TcpListener listener, double timeout_s) {
  const std::size_t n = addresses.size();
  require(self >= 0 && static_cast<std::size_t>(self) < n, ErrorKind::kInvalidArgument,
          "endpoint id out of range");
  std::vector<int> sockets(n, -1);
  auto cleanup = [&] {
    for (int fd : sockets)
      if (fd >= 0) ::close(fd);
  };
  try {
    for (int peer = 0; peer < self; ++peer) {
      const int fd = dial(addresses[static_cast<std::size_t>(peer)], timeout_s);
      sockets[static_cast<std::size_t>(peer)] = fd;
      set_nodelay(fd);
      bytes::Writer hello;
      hello.u32_be(static_cast<std::uint32_t>(self));
      if (!write_all(fd, hello.buffer().data(), 4)) sys_fail("hello");
    }
    const int lfd = listener.release();
    for (std::size_t accepted = 0; accepted < n - 1 - static_cast<std::size_t>(self);
         ++accepted) {
      pollfd p{lfd, POLLIN, 0};
      const int ready = ::poll(&p, 1, static_cast<int>(timeout_s * 1000));
      if (ready <= 0) {
        ::close(lfd);
        fail(ErrorKind::kIo, "timed out waiting for peers to connect");
      }
      const int fd = ::accept(lfd, nullptr, nullptr);
      if (fd < 0) {
        ::close(lfd);
        sys_fail("accept");
      }
      std::uint8_t id_be[4];
      if (!read_all(fd, id_be, 4)) {
        ::close(fd);
        ::close(lfd);
        fail(ErrorKind::kIo, "peer hung up during the handshake");
      }
      const std::uint32_t id = (std::uint32_t{id_be[0]} << 24) |
                               (std::uint32_t{id_be[1]} << 16) |
                               (std::uint32_t{id_be[2]} << 8) | id_be[3];
      if (id <= static_cast<std::uint32_t>(self) || id >= n ||
          sockets[id] >= 0) {
        ::close(fd);
        ::close(lfd);
        fail(ErrorKind::kProtocol, "unexpected peer id " + std::to_string(id));
      }
      set_nodelay(fd);
      sockets[id] = fd;
    }
    ::close(lfd);
  } catch (...) {
    cleanup();
    throw;
  }
  return std::make_unique<TcpTransport>(self, std::move(sockets));
}

}  // namespace gestmpc::runtime
