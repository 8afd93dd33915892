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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestmpc/fixed_point.hpp"
#include "gestmpc/sharing.hpp"

namespace gestmpc::mpc {

using fixed::FixedPointConfig;
using fixed::Ring;
using sharing::RingVec;

struct OpStats {
  std::uint64_t calls = 0;
  std::uint64_t rounds = 0;
  std::uint64_t words = 0;
  std::uint64_t bytes = 0;  // sent per party
  std::uint64_t triples = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t truncations = 0;
  double seconds = 0.0;

  bool same_counts(const OpStats& o) const {
    return calls == o.calls && rounds == o.rounds && words == o.words &&
           bytes == o.bytes && triples == o.triples && comparisons == o.comparisons &&
           truncations == o.truncations;
  }
};

// Communication and preprocessing accounting. Counters are charged to the
// total and, inclusively, to every named operation currently open.
class Transcript {
 public:
  class Scope {
   public:
    Scope(Transcript& t, std::string name);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    Transcript& t_;
    std::chrono::steady_clock::time_point start_;
  };

  void record_round(std::size_t words, std::size_t party_count);
  void record_triple();
  void record_comparison();
  void record_truncation();

  const OpStats& total() const { return total_; }
  std::uint64_t rounds() const { return total_.rounds; }
  const std::map<std::string, OpStats>& ops() const { return ops_; }

  // Equal counters everywhere, ignoring wall-clock fields.
  bool same_counts(const Transcript& other) const;
  nlohmann::json to_json(bool with_timing = true) const;

 private:
  template <class F>
  void charge(F&& f);

  std::vector<std::string> stack_;
  std::map<std::string, OpStats> ops_;
  OpStats total_;
};

// Execution context for a shared program. One context drives the share
// planes of `local_parties()`: every party in the single-process simulator,
// or exactly one party in a networked session. Protocol code is written once
// against this interface and loops over the local planes.
class Context {
 public:
  Context(std::size_t party_count, FixedPointConfig fp);
  virtual ~Context() = default;
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  std::size_t party_count() const { return party_count_; }
  const FixedPointConfig& fixed_point() const { return fp_; }
  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }

  virtual std::span<const int> local_parties() const = 0;

  // One opening round: every party learns the sum (or XOR) of all shares.
  // `planes` are this executor's planes in local_parties() order.
  RingVec open(std::span<const RingVec> planes);
  RingVec open_xor(std::span<const RingVec> planes);

  // Delivers the sum only to `target`; other executors get nullopt. Throws
  // kMissingGrant if any contributing party withholds its grant.
  std::optional<RingVec> reveal(std::span<const RingVec> planes, int target);

  // Grant policy of the locally driven parties for future reveals.
  virtual void set_grant(int party, bool granted) = 0;

  sharing::BeaverTriple triple(const sharing::TripleShape& shape);
  sharing::ComparisonRandomness comparison(std::size_t count);
  sharing::TruncationPair truncation(std::size_t count, std::uint64_t divisor);

  // Secret-shares `values` held by `owner` (empty span on other executors).
  // Returns this executor's planes.
  std::vector<RingVec> share_input(int owner, std::span<const Ring> values,
                                   std::size_t count);

  bool is_local(int party) const;

 protected:
  virtual RingVec do_open(std::span<const RingVec> planes, bool xor_shares) = 0;
  virtual std::optional<RingVec> do_reveal(std::span<const RingVec> planes,
                                           int target) = 0;
  virtual sharing::BeaverTriple do_triple(const sharing::TripleShape& shape) = 0;
  virtual sharing::ComparisonRandomness do_comparison(std::size_t count) = 0;
  virtual sharing::TruncationPair do_truncation(std::size_t count,
                                                std::uint64_t divisor) = 0;
  virtual std::vector<RingVec> do_share_input(int owner, std::span<const Ring> values,
                                              std::size_t count) = 0;

 private:
  std::size_t party_count_;
  FixedPointConfig fp_;
  Transcript transcript_;
};

// Seed streams shared by the simulator and the networked runtime so both
// execute bit-identical programs from the same session seed.
std::uint64_t dealer_seed(std::uint64_t session_seed);
std::uint64_t input_seed(std::uint64_t session_seed, int party);

// Single-process reference executor: holds every party's plane and a local
// dealer. Openings are plain sums but are accounted exactly like network
// rounds.
class LocalContext final : public Context {
 public:
  LocalContext(std::size_t party_count, std::uint64_t seed,
               FixedPointConfig fp = FixedPointConfig{});

  std::span<const int> local_parties() const override { return parties_; }
  void set_grant(int party, bool granted) override;
  sharing::Dealer& dealer() { return dealer_; }

 protected:
  RingVec do_open(std::span<const RingVec> planes, bool xor_shares) override;
  std::optional<RingVec> do_reveal(std::span<const RingVec> planes,
                                   int target) override;
  sharing::BeaverTriple do_triple(const sharing::TripleShape& shape) override;
  sharing::ComparisonRandomness do_comparison(std::size_t count) override;
  sharing::TruncationPair do_truncation(std::size_t count,
                                        std::uint64_t divisor) override;
  std::vector<RingVec> do_share_input(int owner, std::span<const Ring> values,
                                      std::size_t count) override;

 private:
  std::vector<int> parties_;
  std::vector<bool> grants_;
  sharing::Dealer dealer_;
  std::vector<Prng> input_rngs_;
};

}  // namespace gestmpc::mpc
