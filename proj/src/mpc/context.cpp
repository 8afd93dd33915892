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

#include "gestmpc/mpc/context.hpp"

#include <algorithm>

#include "gestmpc/error.hpp"

namespace gestmpc::mpc {

Transcript::Scope::Scope(Transcript& t, std::string name)
    : t_(t), start_(std::chrono::steady_clock::now()) {
  t_.stack_.push_back(std::move(name));
  ++t_.ops_[t_.stack_.back()].calls;
}

Transcript::Scope::~Scope() {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  t_.ops_[t_.stack_.back()].seconds += secs;
  t_.stack_.pop_back();
}

template <class F>
void Transcript::charge(F&& f) {
  f(total_);
  // Inclusive per-op accounting; a name nested inside itself is charged once.
  for (std::size_t i = 0; i < stack_.size(); ++i) {
    if (std::find(stack_.begin(), stack_.begin() + i, stack_[i]) != stack_.begin() + i)
      continue;
    f(ops_[stack_[i]]);
  }
}

void Transcript::record_round(std::size_t words, std::size_t party_count) {
  charge([&](OpStats& s) {
    ++s.rounds;
    s.words += words;
    s.bytes += words * 8 * (party_count - 1);
  });
}

void Transcript::record_triple() {
  charge([](OpStats& s) { ++s.triples; });
}

void Transcript::record_comparison() {
  charge([](OpStats& s) { ++s.comparisons; });
}

void Transcript::record_truncation() {
  charge([](OpStats& s) { ++s.truncations; });
}

bool Transcript::same_counts(const Transcript& other) const {
  if (!total_.same_counts(other.total_) || ops_.size() != other.ops_.size())
    return false;
  for (const auto& [name, stats] : ops_) {
    auto it = other.ops_.find(name);
    if (it == other.ops_.end() || !stats.same_counts(it->second)) return false;
  }
  return true;
}

nlohmann::json Transcript::to_json(bool with_timing) const {
  auto encode = [&](const OpStats& s) {
    nlohmann::json j = {{"calls", s.calls},         {"rounds", s.rounds},
                        {"words", s.words},         {"bytes", s.bytes},
                        {"triples", s.triples},     {"comparisons", s.comparisons},
                        {"truncations", s.truncations}};
    if (with_timing) j["seconds"] = s.seconds;
    return j;
  };
  nlohmann::json ops = nlohmann::json::object();
  for (const auto& [name, stats] : ops_) ops[name] = encode(stats);
  auto total = encode(total_);
  total.erase("calls");
  total.erase("seconds");
  return {{"total", total}, {"ops", ops}};
}

Context::Context(std::size_t party_count, FixedPointConfig fp)
    : party_count_(party_count), fp_(fp) {
  require(party_count >= 2, ErrorKind::kInvalidArgument,
          "a shared computation needs at least two parties");
}

bool Context::is_local(int party) const {
  const auto parties = local_parties();
  return std::find(parties.begin(), parties.end(), party) != parties.end();
}

RingVec Context::open(std::span<const RingVec> planes) {
  require(planes.size() == local_parties().size(), ErrorKind::kShapeMismatch,
          "open: plane count does not match the local parties");
  transcript_.record_round(planes.empty() ? 0 : planes[0].size(), party_count_);
  return do_open(planes, false);
}

RingVec Context::open_xor(std::span<const RingVec> planes) {
  require(planes.size() == local_parties().size(), ErrorKind::kShapeMismatch,
          "open: plane count does not match the local parties");
  transcript_.record_round(planes.empty() ? 0 : planes[0].size(), party_count_);
  return do_open(planes, true);
}

std::optional<RingVec> Context::reveal(std::span<const RingVec> planes, int target) {
  require(target >= 0 && static_cast<std::size_t>(target) < party_count_,
          ErrorKind::kInvalidArgument, "reveal target is not a party");
  require(planes.size() == local_parties().size(), ErrorKind::kShapeMismatch,
          "reveal: plane count does not match the local parties");
  Transcript::Scope scope(transcript_, "reveal");
  transcript_.record_round(planes.empty() ? 0 : planes[0].size(), party_count_);
  return do_reveal(planes, target);
}

sharing::BeaverTriple Context::triple(const sharing::TripleShape& shape) {
  transcript_.record_triple();
  return do_triple(shape);
}

sharing::ComparisonRandomness Context::comparison(std::size_t count) {
  return do_comparison(count);
}

sharing::TruncationPair Context::truncation(std::size_t count, std::uint64_t divisor) {
  return do_truncation(count, divisor);
}

std::vector<RingVec> Context::share_input(int owner, std::span<const Ring> values,
                                          std::size_t count) {
  require(owner >= 0 && static_cast<std::size_t>(owner) < party_count_,
          ErrorKind::kInvalidArgument, "input owner is not a party");
  if (is_local(owner))
    require(values.size() == count, ErrorKind::kShapeMismatch,
            "owner input does not match the declared size");
  Transcript::Scope scope(transcript_, "share_input");
  return do_share_input(owner, values, count);
}

std::uint64_t dealer_seed(std::uint64_t session_seed) {
  return derive_seed(session_seed, 0xdea1e7);
}

std::uint64_t input_seed(std::uint64_t session_seed, int party) {
  return derive_seed(session_seed, 0x1000 + static_cast<std::uint64_t>(party));
}

}  // namespace gestmpc::mpc
