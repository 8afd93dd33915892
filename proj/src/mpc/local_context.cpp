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

#include "gestmpc/error.hpp"
#include "gestmpc/mpc/context.hpp"

namespace gestmpc::mpc {

LocalContext::LocalContext(std::size_t party_count, std::uint64_t seed,
                           FixedPointConfig fp)
    : Context(party_count, fp),
      grants_(party_count, true),
      dealer_(dealer_seed(seed), party_count) {
  for (std::size_t p = 0; p < party_count; ++p) {
    parties_.push_back(static_cast<int>(p));
    input_rngs_.emplace_back(input_seed(seed, static_cast<int>(p)));
  }
}

void LocalContext::set_grant(int party, bool granted) {
  require(party >= 0 && static_cast<std::size_t>(party) < party_count(),
          ErrorKind::kInvalidArgument, "grant for unknown party");
  grants_[static_cast<std::size_t>(party)] = granted;
}

RingVec LocalContext::do_open(std::span<const RingVec> planes, bool xor_shares) {
  return xor_shares ? sharing::reconstruct_xor_planes(planes)
                    : sharing::reconstruct_planes(planes);
}

std::optional<RingVec> LocalContext::do_reveal(std::span<const RingVec> planes,
                                               int target) {
  for (std::size_t p = 0; p < party_count(); ++p) {
    if (static_cast<int>(p) != target && !grants_[p])
      fail(ErrorKind::kMissingGrant,
           "party " + std::to_string(p) + " withheld its reveal grant");
  }
  return sharing::reconstruct_planes(planes);
}

sharing::BeaverTriple LocalContext::do_triple(const sharing::TripleShape& shape) {
  return dealer_.triple(shape);
}

sharing::ComparisonRandomness LocalContext::do_comparison(std::size_t count) {
  return dealer_.comparison(count);
}

sharing::TruncationPair LocalContext::do_truncation(std::size_t count,
                                                    std::uint64_t divisor) {
  return dealer_.truncation(count, divisor);
}

std::vector<RingVec> LocalContext::do_share_input(int owner,
                                                  std::span<const Ring> values,
                                                  std::size_t) {
  return sharing::split_planes(values, party_count(),
                               input_rngs_[static_cast<std::size_t>(owner)]);
}

}  // namespace gestmpc::mpc
