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
#include <vector>

#include "gestmpc/mpc/context.hpp"
#include "gestmpc/runtime/transport.hpp"

namespace gestmpc::runtime {

// Control message codes.
enum class ControlCode : std::uint8_t { kHello = 1, kDone = 2 };

// Dealer request codes carried in triple-request payloads.
enum class RequestCode : std::uint8_t { kTriple = 1, kComparison = 2, kTruncation = 3 };

// Drives one party's share plane over an endpoint. The dealer is endpoint
// `party_count`.
class PartyContext final : public mpc::Context {
 public:
  PartyContext(std::size_t party_count, int self, Endpoint& endpoint, std::uint64_t seed,
               mpc::FixedPointConfig fp = mpc::FixedPointConfig{});

  std::span<const int> local_parties() const override { return self_; }
  void set_grant(int party, bool granted) override;
  int self() const { return self_[0]; }
  int dealer() const { return static_cast<int>(party_count()); }

  // Exchanges hello messages with the other parties and checks that every
  // party runs the same program.
  void handshake(std::uint64_t program_hash);
  // Tells the dealer this party needs no further randomness.
  void finish();

 protected:
  mpc::RingVec do_open(std::span<const mpc::RingVec> planes, bool xor_shares) override;
  std::optional<mpc::RingVec> do_reveal(std::span<const mpc::RingVec> planes,
                                        int target) override;
  sharing::BeaverTriple do_triple(const sharing::TripleShape& shape) override;
  sharing::ComparisonRandomness do_comparison(std::size_t count) override;
  sharing::TruncationPair do_truncation(std::size_t count,
                                        std::uint64_t divisor) override;
  std::vector<mpc::RingVec> do_share_input(int owner, std::span<const mpc::Ring> values,
                                           std::size_t count) override;

 private:
  Message request(std::vector<std::uint8_t> payload, MessageKind reply);

  std::vector<int> self_;
  Endpoint& ep_;
  Prng input_rng_;
  bool granted_ = true;
};

struct DealerReport {
  std::uint64_t requests = 0;
  std::vector<MessageKind> inbound_kinds;
};

// Serves identical randomness requests from all parties in lockstep until
// every party reports done. Throws kShapeMismatch if the parties' requests
// disagree.
DealerReport dealer_serve(sharing::Dealer& dealer, Endpoint& endpoint);

}  // namespace gestmpc::runtime
