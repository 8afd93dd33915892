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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "gestmpc/fixed_point.hpp"
#include "gestmpc/random.hpp"

// Additive secret sharing over Z_{2^64} and the trusted dealer that hands out
// correlated randomness. Security model: semi-honest parties and a dealer
// that never sees live data; nothing here defends against active cheating.
namespace gestmpc::sharing {

using fixed::Ring;
using RingVec = std::vector<Ring>;

struct ShareVector {
  std::size_t party_count = 0;
  std::vector<Ring> shares;
};

// The first n-1 shares are uniform; the last closes the sum to the secret.
ShareVector split(Ring secret, std::size_t party_count, Prng& rng);

// Modular sum. Throws kInvalidArgument when shares are missing.
Ring reconstruct(const ShareVector& sv);

// Element-wise versions over share planes (one plane per party).
std::vector<RingVec> split_planes(std::span<const Ring> secret,
                                  std::size_t party_count, Prng& rng);
RingVec reconstruct_planes(std::span<const RingVec> planes);
std::vector<RingVec> split_xor_planes(std::span<const Ring> secret,
                                      std::size_t party_count, Prng& rng);
RingVec reconstruct_xor_planes(std::span<const RingVec> planes);

enum class TripleKind : std::uint8_t { kElementwise = 1, kMatMul = 2 };

// Elementwise triples are rows x cols; matmul triples pair a rows x inner
// mask with an inner x cols mask.
struct TripleShape {
  TripleKind kind = TripleKind::kElementwise;
  std::size_t rows = 0;
  std::size_t inner = 0;
  std::size_t cols = 0;

  static TripleShape elementwise(std::size_t rows, std::size_t cols) {
    return {TripleKind::kElementwise, rows, 0, cols};
  }
  static TripleShape matmul(std::size_t rows, std::size_t inner, std::size_t cols) {
    return {TripleKind::kMatMul, rows, inner, cols};
  }

  std::size_t a_size() const;
  std::size_t b_size() const;
  std::size_t c_size() const { return rows * cols; }

  auto operator<=>(const TripleShape&) const = default;
};

// Correlated randomness is held as planes, `parties[i]` owning plane i of
// every field. The dealer produces all planes; a party receives a
// single-plane slice.
struct BeaverTriple {
  TripleShape shape;
  std::uint64_t serial = 0;
  std::vector<int> parties;
  std::vector<RingVec> a, b, c;  // c = a * b (element-wise or matrix) mod 2^64
  bool used = false;
};

// Randomness for one batch of sign extractions: an arithmetic mask r with an
// XOR sharing of its bits, binary AND triples for the borrow tree, and a
// random bit shared both ways for the final bit-to-arithmetic conversion.
struct ComparisonRandomness {
  static constexpr std::size_t kLevels = 6;        // log2(64)
  static constexpr std::size_t kAndsPerLevel = 2;
  static constexpr std::size_t kAndGates = kLevels * kAndsPerLevel;

  std::size_t count = 0;
  std::uint64_t serial = 0;
  std::vector<int> parties;
  std::vector<RingVec> mask;       // arithmetic shares of r
  std::vector<RingVec> mask_bits;  // XOR shares of r
  std::vector<RingVec> and_a, and_b, and_c;  // kAndGates * count words, gate-major
  std::vector<RingVec> flip_bits;  // XOR shares of rho in bit 0
  std::vector<RingVec> flip;       // arithmetic shares of rho
  bool used = false;
};

// Mask pair (r, floor(r / d)) for dealer-assisted division when the party
// count rules out local truncation. r is drawn from [0, 2^62), which hides
// inputs below 2^50 with statistical distance about 2^-11.
struct TruncationPair {
  static constexpr int kMaskBits = 62;
  static constexpr int kInputBits = 50;

  std::size_t count = 0;
  std::uint64_t divisor = 1;
  std::uint64_t serial = 0;
  std::vector<int> parties;
  std::vector<RingVec> mask;
  std::vector<RingVec> mask_div;
  bool used = false;
};

BeaverTriple slice(const BeaverTriple& t, int party);
ComparisonRandomness slice(const ComparisonRandomness& r, int party);
TruncationPair slice(const TruncationPair& p, int party);

// Deterministic trusted dealer. Identical seeds and request sequences give
// byte-identical randomness; every item carries a strictly increasing serial.
class Dealer {
 public:
  Dealer(std::uint64_t seed, std::size_t party_count);

  BeaverTriple triple(const TripleShape& shape);
  std::vector<BeaverTriple> deal_triples(const TripleShape& shape, std::size_t count);
  ComparisonRandomness comparison(std::size_t count);
  TruncationPair truncation(std::size_t count, std::uint64_t divisor);

  std::size_t party_count() const { return party_count_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t issued(const TripleShape& shape) const;
  std::uint64_t issued_total() const { return serial_; }

 private:
  std::vector<RingVec> share_values(std::span<const Ring> values);
  std::vector<RingVec> xor_share_values(std::span<const Ring> values);
  std::vector<RingVec> uniform_planes(std::size_t words);
  std::vector<int> all_parties() const;

  std::uint64_t seed_;
  std::size_t party_count_;
  Prng rng_;
  std::uint64_t serial_ = 0;
  std::map<TripleShape, std::uint64_t> issued_;
};

// Length-prefixed binary records: u32 LE body length, then a u8 record type,
// u64 serial, u32 plane count, u32 party ids, a shape header and the share
// words as little-endian u64.
std::vector<std::uint8_t> serialize(const BeaverTriple& t);
std::vector<std::uint8_t> serialize(const ComparisonRandomness& r);
std::vector<std::uint8_t> serialize(const TruncationPair& p);
BeaverTriple deserialize_triple(std::span<const std::uint8_t> record);
ComparisonRandomness deserialize_comparison(std::span<const std::uint8_t> record);
TruncationPair deserialize_truncation(std::span<const std::uint8_t> record);

void write_triple_stream(std::ostream& os, std::span<const BeaverTriple> triples);
std::vector<BeaverTriple> read_triple_stream(std::istream& is);

}  // namespace gestmpc::sharing
