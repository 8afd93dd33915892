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

#include <boost/math/distributions/chi_squared.hpp>

#include "gestmpc/error.hpp"
#include "gestmpc/lwe.hpp"

using namespace gestmpc;
using namespace gestmpc::lwe;

TEST(Lwe, ParamsValidated) {
  LweParams p;
  EXPECT_NO_THROW(p.validate());
  p.q = 8;
  EXPECT_THROW(p.validate(), Error);
  p.q = 1000;  // even, not a power of two
  EXPECT_THROW(p.validate(), Error);
  p.q = 1001;
  EXPECT_NO_THROW(p.validate());
  p.q = (1u << 24) + 2;
  EXPECT_THROW(p.validate(), Error);
  p = LweParams{};
  p.n = 0;
  EXPECT_THROW(p.validate(), Error);
  p = LweParams{};
  p.sigma_err = -1;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Lwe, PublicKeyShape) {
  Prng rng(1);
  LweParams p;
  p.n = 16;
  const auto kp = keygen(p, rng);
  EXPECT_EQ(kp.pk.a.rows(), 16u);
  EXPECT_EQ(kp.pk.a.cols(), 16u);
  EXPECT_EQ(kp.pk.b.size(), 16u);
  EXPECT_EQ(kp.sk.s.size(), 16u);
  for (auto v : kp.pk.a.data()) EXPECT_LT(v, p.q);
}

TEST(Lwe, RoundTripAtDefaults) {
  Prng rng(2);
  const auto kp = keygen(LweParams{}, rng);
  int ok = 0;
  for (int i = 0; i < 2000; ++i) {
    const int m = static_cast<int>(rng.below(2));
    ok += decrypt_bit(encrypt_bit(m, kp.pk, rng), kp.sk) == m;
  }
  EXPECT_EQ(ok, 2000);
}

TEST(Lwe, ZeroNoiseIsExact) {
  Prng rng(3);
  LweParams p;
  p.n = 64;
  p.sigma_key = p.sigma_err = p.sigma_enc = 0.0;
  const auto kp = keygen(p, rng);
  for (int m : {0, 1, 1, 0}) {
    const auto ct = encrypt_bit(m, kp.pk, rng);
    EXPECT_EQ(decrypt_bit(ct, kp.sk), m);
    EXPECT_EQ(phase(ct, kp.sk), m ? static_cast<std::int64_t>(p.q / 2) : 0)
        << "noise-free phase is exactly 0 or q/2";
  }
}

TEST(Lwe, AdditionIsXor) {
  Prng rng(4);
  const auto kp = keygen(LweParams{}, rng);
  for (int i = 0; i < 200; ++i) {
    const int a = static_cast<int>(rng.below(2)), b = static_cast<int>(rng.below(2));
    const auto c = add_ciphertexts(encrypt_bit(a, kp.pk, rng), encrypt_bit(b, kp.pk, rng));
    EXPECT_EQ(decrypt_bit(c, kp.sk), a ^ b);
  }
}

TEST(Lwe, MismatchedParamsRejected) {
  Prng rng(5);
  LweParams p1, p2;
  p1.n = 8;
  p2.n = 9;
  const auto k1 = keygen(p1, rng), k2 = keygen(p2, rng);
  EXPECT_THROW(add_ciphertexts(encrypt_bit(0, k1.pk, rng), encrypt_bit(0, k2.pk, rng)), Error);
  EXPECT_THROW(decrypt_bit(encrypt_bit(0, k1.pk, rng), k2.sk), Error);
  EXPECT_THROW(encrypt_bit(2, k1.pk, rng), Error);
}

TEST(Lwe, CiphertextBodyLooksUniform) {
  // c0 of encryptions of 0 binned into 16 equal ranges; chi-square at 15 dof.
  Prng rng(6);
  LweParams p;
  p.n = 128;
  const auto kp = keygen(p, rng);
  const int trials = 16000, bins = 16;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < trials; ++i)
    ++counts[encrypt_bit(0, kp.pk, rng).c0 / (p.q / bins)];
  double stat = 0;
  const double expect = double(trials) / bins;
  for (int c : counts) stat += (c - expect) * (c - expect) / expect;
  const boost::math::chi_squared dist(bins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.001) << "chi2 " << stat;
}
