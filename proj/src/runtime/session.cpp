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

#include "gestmpc/runtime/session.hpp"

#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "gestmpc/error.hpp"
#include "gestmpc/hash.hpp"

namespace gestmpc::runtime {

std::uint64_t program_hash(const Program& program) {
  return program.hash != 0 ? program.hash : fnv1a64(program.name);
}

namespace {

PartyResult execute_party(const SessionConfig& cfg, int party, const Program& program,
                          Endpoint& ep) {
  PartyContext ctx(cfg.parties, party, ep, cfg.seed, cfg.fixed_point);
  ctx.handshake(program_hash(program));
  PartyResult result;
  result.party = party;
  result.outputs = program.body(ctx);
  ctx.finish();
  result.transcript = ctx.transcript();
  result.inbound_kinds = ep.inbound_kinds();
  result.frames_sent = ep.frames_sent();
  result.bytes_sent = ep.bytes_sent();
  return result;
}

DealerReport execute_dealer(const SessionConfig& cfg, Endpoint& ep) {
  sharing::Dealer dealer(mpc::dealer_seed(cfg.seed), cfg.parties);
  return dealer_serve(dealer, ep);
}

std::string endpoint_name(const SessionConfig& cfg, int id) {
  return static_cast<std::size_t>(id) == cfg.parties ? std::string("dealer")
                                                      : "party " + std::to_string(id);
}

// Collects failures from the endpoint threads and tears the session down on
// the first one.
class Abort {
 public:
  void attach(int id, Endpoint* ep) {
    std::lock_guard lock(mu_);
    endpoints_.emplace_back(id, ep);
    if (aborted_) ep->close();
  }

  void record(int id, std::exception_ptr err) {
    bool secondary = false;
    try {
      std::rethrow_exception(err);
    } catch (const Error& e) {
      secondary = e.kind() == ErrorKind::kSessionAborted;
    } catch (...) {
    }
    std::lock_guard lock(mu_);
    failures_.push_back({id, err, secondary});
    if (!aborted_) {
      aborted_ = true;
      for (auto& [_, ep] : endpoints_) ep->close();
    }
  }

  void rethrow(const SessionConfig& cfg) const {
    if (failures_.empty()) return;
    const Failure* root = &failures_.front();
    for (const auto& f : failures_)
      if (!f.secondary) {
        root = &f;
        break;
      }
    const std::string who = endpoint_name(cfg, root->id);
    try {
      std::rethrow_exception(root->err);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kSessionAborted)
        fail(ErrorKind::kSessionAborted, "session aborted at " + who + ": " + e.what());
      fail(e.kind(), who + ": " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorKind::kSessionAborted, "session aborted at " + who + ": " + e.what());
    } catch (...) {
      fail(ErrorKind::kSessionAborted, "session aborted at " + who);
    }
  }

 private:
  struct Failure {
    int id;
    std::exception_ptr err;
    bool secondary;
  };
  std::mutex mu_;
  bool aborted_ = false;
  std::vector<std::pair<int, Endpoint*>> endpoints_;
  std::vector<Failure> failures_;
};

}  // namespace

PartyResult run_party(const SessionConfig& cfg, int party, const Program& program,
                      std::unique_ptr<Transport> transport) {
  Endpoint ep(std::move(transport), cfg.session_id);
  if (cfg.tap) ep.set_tap([&](int from, const Message& m) { cfg.tap(party, from, m); });
  try {
    return execute_party(cfg, party, program, ep);
  } catch (...) {
    ep.close();
    throw;
  }
}

DealerReport run_dealer(const SessionConfig& cfg, std::unique_ptr<Transport> transport) {
  Endpoint ep(std::move(transport), cfg.session_id);
  try {
    return execute_dealer(cfg, ep);
  } catch (...) {
    ep.close();
    throw;
  }
}

SessionResult run_session(const SessionConfig& cfg, const Program& program) {
  return run_session(cfg, std::vector<Program>(cfg.parties, program));
}

SessionResult run_session(const SessionConfig& cfg, const std::vector<Program>& programs) {
  require(cfg.parties >= 2, ErrorKind::kInvalidArgument,
          "a session needs at least two parties");
  require(programs.size() == cfg.parties, ErrorKind::kInvalidArgument,
          "one program per party expected");
  const std::size_t total = cfg.parties + 1;

  std::optional<InProcessHub> hub;
  std::vector<TcpAddress> addresses;
  std::vector<std::optional<TcpListener>> listeners(total);
  if (cfg.transport == TransportKind::kInProcess) {
    hub.emplace(total);
  } else {
    addresses = cfg.endpoints;
    if (addresses.empty()) addresses.assign(total, TcpAddress{});
    require(addresses.size() == total, ErrorKind::kInvalidArgument,
            "need one TCP endpoint per party plus the dealer");
    for (std::size_t i = 0; i < total; ++i) {
      listeners[i].emplace(addresses[i].host, addresses[i].port);
      addresses[i].port = listeners[i]->port();
    }
  }

  Abort abort;
  std::vector<std::unique_ptr<Endpoint>> endpoints(total);
  SessionResult result;
  result.parties.resize(cfg.parties);

  auto worker = [&](int id) {
    try {
      std::unique_ptr<Transport> transport =
          hub ? hub->endpoint(id)
              : connect_tcp(id, addresses, std::move(*listeners[static_cast<std::size_t>(id)]),
                            cfg.connect_timeout_s);
      auto& ep = endpoints[static_cast<std::size_t>(id)];
      ep = std::make_unique<Endpoint>(std::move(transport), cfg.session_id);
      abort.attach(id, ep.get());
      if (static_cast<std::size_t>(id) == cfg.parties) {
        result.dealer = execute_dealer(cfg, *ep);
      } else {
        if (cfg.tap)
          ep->set_tap([&cfg, id](int from, const Message& m) { cfg.tap(id, from, m); });
        result.parties[static_cast<std::size_t>(id)] =
            execute_party(cfg, id, programs[static_cast<std::size_t>(id)], *ep);
      }
    } catch (...) {
      abort.record(id, std::current_exception());
    }
  };

  std::vector<std::thread> threads;
  for (std::size_t id = 0; id < total; ++id)
    threads.emplace_back(worker, static_cast<int>(id));
  for (auto& t : threads) t.join();
  abort.rethrow(cfg);
  return result;
}

}  // namespace gestmpc::runtime
