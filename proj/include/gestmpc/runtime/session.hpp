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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gestmpc/matrix.hpp"
#include "gestmpc/mpc/context.hpp"
#include "gestmpc/runtime/party_context.hpp"

namespace gestmpc::runtime {

enum class TransportKind { kInProcess, kTcp };

struct SessionConfig {
  std::size_t parties = 2;
  std::uint64_t seed = 0;
  std::uint64_t session_id = 1;
  mpc::FixedPointConfig fixed_point;
  TransportKind transport = TransportKind::kInProcess;
  // TCP only: one address per party followed by the dealer. Empty means
  // 127.0.0.1 with ports picked by the system.
  std::vector<TcpAddress> endpoints;
  double connect_timeout_s = 30.0;
  // Observes every frame delivered to a party: (observer, sender, message).
  // Called from party threads.
  std::function<void(int, int, const Message&)> tap;
};

// The body runs once per party, each in lockstep with the others, and
// returns that party's outputs (typically revealed or opened values).
using ProgramBody = std::function<std::vector<RealMatrix>(mpc::Context&)>;

struct Program {
  std::string name;
  std::uint64_t hash = 0;  // defaults to a hash of the name when zero
  ProgramBody body;
};

struct PartyResult {
  int party = 0;
  std::vector<RealMatrix> outputs;
  mpc::Transcript transcript;
  std::vector<MessageKind> inbound_kinds;
  std::uint64_t frames_sent = 0;
  std::uint64_t bytes_sent = 0;
};

struct SessionResult {
  std::vector<PartyResult> parties;
  DealerReport dealer;
};

std::uint64_t program_hash(const Program& program);

// Spawns every party and the dealer as threads over the configured
// transport. A failure anywhere aborts the whole session; the first root
// cause is rethrown, prefixed with the failing endpoint.
SessionResult run_session(const SessionConfig& cfg, const Program& program);
// One program per party; hashes must agree.
SessionResult run_session(const SessionConfig& cfg, const std::vector<Program>& programs);

// Building blocks for running each endpoint in its own process.
PartyResult run_party(const SessionConfig& cfg, int party, const Program& program,
                      std::unique_ptr<Transport> transport);
DealerReport run_dealer(const SessionConfig& cfg, std::unique_ptr<Transport> transport);

}  // namespace gestmpc::runtime
