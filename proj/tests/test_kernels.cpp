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

#include "gestmpc/kernels.hpp"
#include "oracles.hpp"

using namespace gestmpc;

TEST(Kernels, SerialMatmulMatchesOracle) {
  Prng rng(1);
  const auto a = oracle::random_matrix(rng, 7, 11, -2, 2);
  const auto b = oracle::random_matrix(rng, 11, 5, -2, 2);
  RealMatrix out(7, 5);
  kernels::matmul_serial<double>(a.data(), b.data(), out.data(), 7, 11, 5);
  EXPECT_LT(oracle::max_abs_diff(out, oracle::matmul(a, b)), 1e-12);
}

TEST(Kernels, ParallelTwinIsBitwiseIdentical) {
  Prng rng(2);
  for (auto [n, k, m] : {std::tuple{1, 1, 1}, {3, 250, 80}, {64, 96, 250}, {200, 80, 4}}) {
    const auto a = oracle::random_matrix(rng, n, k, -1, 1);
    const auto b = oracle::random_matrix(rng, k, m, -1, 1);
    RealMatrix s(n, m), p(n, m);
    kernels::matmul_serial<double>(a.data(), b.data(), s.data(), n, k, m);
    kernels::matmul_parallel<double>(a.data(), b.data(), p.data(), n, k, m);
    EXPECT_EQ(s, p);

    std::vector<std::uint64_t> ra(n * k), rb(k * m), rs(n * m), rp(n * m);
    for (auto& v : ra) v = rng.next();
    for (auto& v : rb) v = rng.next();
    kernels::matmul_serial<std::uint64_t>(ra, rb, rs, n, k, m);
    kernels::matmul_parallel<std::uint64_t>(ra, rb, rp, n, k, m);
    EXPECT_EQ(rs, rp);
    EXPECT_EQ(rs, oracle::ring_matmul(ra, rb, n, k, m));
  }
}

TEST(Kernels, TransposeInvolution) {
  Prng rng(3);
  const auto a = oracle::random_matrix(rng, 4, 9, -1, 1);
  const auto t = kernels::transpose(a);
  EXPECT_EQ(t.rows(), 9u);
  EXPECT_EQ(t(2, 3), a(3, 2));
  EXPECT_EQ(kernels::transpose(t), a);
}

TEST(Kernels, NearestCentroidTwins) {
  Prng rng(4);
  const std::size_t n = 500, k = 6, dim = 8;
  const auto pts = oracle::random_matrix(rng, n, dim, -3, 3);
  const auto cen = oracle::random_matrix(rng, k, dim, -3, 3);
  std::vector<std::size_t> as(n), ap(n);
  std::vector<double> ds(n), dp(n);
  kernels::nearest_centroid_serial(pts.data(), cen.data(), dim, as, ds);
  kernels::nearest_centroid_parallel(pts.data(), cen.data(), dim, ap, dp);
  EXPECT_EQ(as, ap);
  EXPECT_EQ(ds, dp);
  for (std::size_t i = 0; i < n; ++i) {
    double best = INFINITY;
    std::size_t arg = 0;
    for (std::size_t c = 0; c < k; ++c) {
      double d = 0;
      for (std::size_t j = 0; j < dim; ++j) d += std::pow(pts(i, j) - cen(c, j), 2);
      if (d < best) best = d, arg = c;
    }
    EXPECT_EQ(as[i], arg);
    EXPECT_NEAR(ds[i], best, 1e-9);
  }
}

TEST(Kernels, NearestCentroidTieGoesToLowestIndex) {
  const std::vector<double> pts = {0.0, 0.0};
  const std::vector<double> cen = {1.0, 0.0, -1.0, 0.0};
  std::vector<std::size_t> a(1);
  std::vector<double> d(1);
  kernels::nearest_centroid_serial(pts, cen, 2, a, d);
  EXPECT_EQ(a[0], 0u);
}
