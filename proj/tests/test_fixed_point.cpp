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

#include <cmath>
#include <limits>

#include "gestmpc/error.hpp"
#include "gestmpc/fixed_point.hpp"
#include "gestmpc/random.hpp"

using namespace gestmpc;
using namespace gestmpc::fixed;

TEST(FixedPoint, EncodeDecodeRoundTripWithinHalfUlp) {
  const FixedPointConfig cfg(16);
  Prng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform(-1000.0, 1000.0);
    EXPECT_LE(std::fabs(decode(encode(x, cfg), cfg) - x), 0.5 / 65536.0 + 1e-12);
  }
}

TEST(FixedPoint, KnownEncodings) {
  const FixedPointConfig cfg(16);
  EXPECT_EQ(encode(1.0, cfg), 65536u);
  EXPECT_EQ(as_signed(encode(-1.0, cfg)), -65536);
  EXPECT_EQ(encode(0.5 / 65536.0, cfg), 1u);   // half away from zero
  EXPECT_EQ(as_signed(encode(-0.5 / 65536.0, cfg)), -1);
  EXPECT_EQ(encode_bits(7.0, 0), 7u);
  EXPECT_DOUBLE_EQ(decode_bits(as_ring(-3), 0), -3.0);
}

TEST(FixedPoint, OverflowAtBound) {
  const FixedPointConfig cfg(16);
  EXPECT_DOUBLE_EQ(cfg.bound(), std::ldexp(1.0, 47));
  EXPECT_NO_THROW(encode(std::ldexp(1.0, 47) - 1.0, cfg));
  EXPECT_THROW(encode(std::ldexp(1.0, 47), cfg), Error);
  EXPECT_THROW(encode(-std::ldexp(1.0, 47), cfg), Error);
  EXPECT_THROW(encode(std::numeric_limits<double>::quiet_NaN(), cfg), Error);
  EXPECT_THROW(encode(std::numeric_limits<double>::infinity(), cfg), Error);
}

TEST(FixedPoint, PrecisionRange) {
  EXPECT_THROW(FixedPointConfig(0), Error);
  EXPECT_THROW(FixedPointConfig(33), Error);
  EXPECT_NO_THROW(FixedPointConfig(32));
}

TEST(FixedPoint, AdditionIsRingAddition) {
  const FixedPointConfig cfg(16);
  Prng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-100, 100), b = rng.uniform(-100, 100);
    EXPECT_NEAR(decode(encode(a, cfg) + encode(b, cfg), cfg), a + b, 1.0 / 65536.0);
  }
}

TEST(FixedPoint, TruncateProductRoundsToNearest) {
  const FixedPointConfig cfg(16);
  Prng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-50, 50), b = rng.uniform(-50, 50);
    const Ring p = encode(a, cfg) * encode(b, cfg);
    const double exact = decode(encode(a, cfg), cfg) * decode(encode(b, cfg), cfg);
    EXPECT_LE(std::fabs(decode(truncate(p, cfg), cfg) - exact), 0.5 / 65536.0 + 1e-9);
  }
}

TEST(FixedPoint, FloorDivNegative) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(-8, 2), -4);
  EXPECT_EQ(floor_div(0, 5), 0);
}
