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

#include <gtest/gtest.h>

#include <sstream>

#include "gestmpc/error.hpp"
#include "gestmpc/sharing.hpp"
#include "oracles.hpp"

using namespace gestmpc;
using namespace gestmpc::sharing;

TEST(Sharing, SplitReconstructsForAnyPartyCount) {
  Prng rng(1);
  for (std::size_t n = 2; n <= 5; ++n)
    for (int i = 0; i < 200; ++i) {
      const Ring s = rng.next();
      const auto sv = split(s, n, rng);
      EXPECT_EQ(sv.shares.size(), n);
      EXPECT_EQ(reconstruct(sv), s);
    }
}

TEST(Sharing, MissingShareRejected) {
  Prng rng(2);
  auto sv = split(42, 3, rng);
  sv.shares.pop_back();
  EXPECT_THROW(reconstruct(sv), Error);
}

TEST(Sharing, NonClosingSharesLookUniform) {
  // Top bit of the free share should be a fair coin whatever the secret.
  Prng rng(3);
  int ones = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) ones += static_cast<int>(split(5, 2, rng).shares[1] >> 63);
  EXPECT_NEAR(ones / double(trials), 0.5, 0.02);
}

TEST(Sharing, PlanesAndXorPlanes) {
  Prng rng(4);
  RingVec secret(37);
  for (auto& s : secret) s = rng.next();
  for (std::size_t n : {2u, 3u, 4u}) {
    EXPECT_EQ(reconstruct_planes(split_planes(secret, n, rng)), secret);
    EXPECT_EQ(reconstruct_xor_planes(split_xor_planes(secret, n, rng)), secret);
  }
}

TEST(Dealer, ElementwiseTripleInvariant) {
  Dealer d(7, 3);
  const auto t = d.triple(TripleShape::elementwise(4, 5));
  const auto a = reconstruct_planes(t.a), b = reconstruct_planes(t.b),
             c = reconstruct_planes(t.c);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], a[i] * b[i]);
}

TEST(Dealer, MatmulTripleInvariant) {
  Dealer d(8, 2);
  const auto t = d.triple(TripleShape::matmul(3, 6, 4));
  const auto a = reconstruct_planes(t.a), b = reconstruct_planes(t.b),
             c = reconstruct_planes(t.c);
  EXPECT_EQ(c, oracle::ring_matmul(a, b, 3, 6, 4));
}

TEST(Dealer, DeterministicUnderSeedWithIncreasingSerials) {
  Dealer d1(9, 2), d2(9, 2);
  const auto x = d1.deal_triples(TripleShape::elementwise(2, 2), 3);
  const auto y = d2.deal_triples(TripleShape::elementwise(2, 2), 3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(serialize(x[i]), serialize(y[i]));
    if (i > 0) {
      EXPECT_GT(x[i].serial, x[i - 1].serial);
    }
  }
  EXPECT_EQ(d1.issued(TripleShape::elementwise(2, 2)), 3u);
}

TEST(Dealer, ComparisonRandomnessConsistent) {
  Dealer d(10, 3);
  const auto r = d.comparison(9);
  EXPECT_EQ(reconstruct_planes(r.mask), reconstruct_xor_planes(r.mask_bits));
  const auto a = reconstruct_xor_planes(r.and_a), b = reconstruct_xor_planes(r.and_b),
             c = reconstruct_xor_planes(r.and_c);
  ASSERT_EQ(a.size(), ComparisonRandomness::kAndGates * 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(c[i], a[i] & b[i]);
  const auto fb = reconstruct_xor_planes(r.flip_bits), f = reconstruct_planes(r.flip);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_LE(f[i], 1u);
    EXPECT_EQ(fb[i] & 1u, f[i]);
  }
}

TEST(Dealer, TruncationPairConsistent) {
  Dealer d(11, 3);
  const auto p = d.truncation(50, 65536);
  const auto r = reconstruct_planes(p.mask), q = reconstruct_planes(p.mask_div);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_LT(r[i], Ring{1} << TruncationPair::kMaskBits);
    EXPECT_EQ(q[i], r[i] / 65536);
  }
}

TEST(Dealer, SliceKeepsOnePlane) {
  Dealer d(12, 3);
  const auto t = d.triple(TripleShape::elementwise(1, 3));
  const auto s = slice(t, 2);
  ASSERT_EQ(s.parties, std::vector<int>{2});
  EXPECT_EQ(s.a[0], t.a[2]);
  EXPECT_EQ(s.c[0], t.c[2]);
}

TEST(Serialization, RoundTripsAllRecords) {
  Dealer d(13, 2);
  const auto t = d.triple(TripleShape::matmul(2, 3, 4));
  const auto t2 = deserialize_triple(serialize(t));
  EXPECT_EQ(serialize(t2), serialize(t));
  EXPECT_EQ(t2.shape, t.shape);

  const auto c = d.comparison(3);
  EXPECT_EQ(serialize(deserialize_comparison(serialize(c))), serialize(c));
  const auto p = d.truncation(4, 10);
  const auto p2 = deserialize_truncation(serialize(p));
  EXPECT_EQ(p2.divisor, 10u);
  EXPECT_EQ(serialize(p2), serialize(p));

  std::stringstream ss;
  const auto batch = d.deal_triples(TripleShape::elementwise(2, 2), 4);
  write_triple_stream(ss, batch);
  const auto back = read_triple_stream(ss);
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(serialize(back[i]), serialize(batch[i]));
}

TEST(Serialization, TruncatedRecordRejected) {
  Dealer d(14, 2);
  auto bytes = serialize(d.triple(TripleShape::elementwise(2, 2)));
  bytes.pop_back();
  EXPECT_THROW(deserialize_triple(bytes), Error);
  EXPECT_THROW(deserialize_comparison(serialize(d.triple(TripleShape::elementwise(1, 1)))),
               Error);
}
