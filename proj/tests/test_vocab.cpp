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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gestmpc/error.hpp"
#include "gestmpc/random.hpp"
#include "gestmpc/vocab.hpp"

namespace {

using namespace gestmpc;
using namespace gestmpc::vocab;

RealMatrix blobs(std::size_t per, std::size_t k, double sigma, std::uint64_t seed,
                 std::vector<std::size_t>* truth = nullptr) {
  Prng rng(seed);
  RealMatrix x(per * k, 2);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < per; ++i) {
      x(c * per + i, 0) = 10.0 * static_cast<double>(c) + sigma * rng.normal();
      x(c * per + i, 1) = (c % 2 ? 5.0 : -5.0) + sigma * rng.normal();
      if (truth) truth->push_back(c);
    }
  return x;
}

double inertia_of(const RealMatrix& x, const ClusterAssignment& a) {
  double s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double d = x(i, j) - a.centroids(a.assignment[i], j);
      s += d * d;
    }
  return s;
}

TEST(Vocab, RecoversSeparatedBlobs) {
  std::vector<std::size_t> truth;
  const auto x = blobs(20, 4, 0.5, 1, &truth);
  const auto a = kmeans(x, 4, 7);
  // Same partition up to relabelling.
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.rows(); ++j)
      EXPECT_EQ(truth[i] == truth[j], a.assignment[i] == a.assignment[j]);
  EXPECT_NEAR(a.inertia, inertia_of(x, a), 1e-9);
}

TEST(Vocab, FixpointProperties) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = blobs(15, 3, 4.0, seed);
    const auto a = kmeans(x, 3, seed);
    // Every point sits at its nearest centroid.
    for (std::size_t i = 0; i < x.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < 3; ++c) {
        const double d = std::pow(x(i, 0) - a.centroids(c, 0), 2) +
                         std::pow(x(i, 1) - a.centroids(c, 1), 2);
        best = std::min(best, d);
      }
      const auto c = a.assignment[i];
      const double mine = std::pow(x(i, 0) - a.centroids(c, 0), 2) +
                          std::pow(x(i, 1) - a.centroids(c, 1), 2);
      EXPECT_LE(mine, best + 1e-9);
    }
    // Centroids are the means of their members.
    for (std::size_t c = 0; c < 3; ++c) {
      double sx = 0, sy = 0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < x.rows(); ++i)
        if (a.assignment[i] == c) {
          sx += x(i, 0);
          sy += x(i, 1);
          ++n;
        }
      ASSERT_GT(n, 0u);
      EXPECT_NEAR(a.centroids(c, 0), sx / n, 1e-9);
      EXPECT_NEAR(a.centroids(c, 1), sy / n, 1e-9);
    }
    for (std::size_t i = 1; i < a.inertia_history.size(); ++i)
      EXPECT_LE(a.inertia_history[i], a.inertia_history[i - 1] + 1e-9);
  }
}

TEST(Vocab, DeterministicAndOrderInvariant) {
  const auto x = blobs(10, 4, 3.0, 5);
  const auto a = kmeans(x, 4, 11), b = kmeans(x, 4, 11);
  EXPECT_EQ(a.assignment, b.assignment);
  // Permuting the input rows permutes the assignment.
  std::vector<std::size_t> perm(x.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  RealMatrix y(x.rows(), x.cols());
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) = x(perm[i], j);
  const auto c = kmeans(y, 4, 11);
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = 0; j < perm.size(); ++j)
      EXPECT_EQ(a.assignment[perm[i]] == a.assignment[perm[j]],
                c.assignment[i] == c.assignment[j]);
  EXPECT_NEAR(a.inertia, c.inertia, 1e-9);
}

TEST(Vocab, EdgeCases) {
  const auto x = blobs(3, 2, 1.0, 2);
  EXPECT_THROW(kmeans(x, 0, 1), Error);
  EXPECT_THROW(kmeans(x, 7, 1), Error);
  const auto all = kmeans(x, 6, 1);
  EXPECT_NEAR(all.inertia, 0.0, 1e-12);
  const auto one = kmeans(x, 1, 1);
  EXPECT_EQ(std::count(one.assignment.begin(), one.assignment.end(), 0u), 6);
}

TEST(Vocab, SeparabilityReport) {
  const std::vector<std::size_t> assign{0, 0, 1, 1, 1, 2, 2, 0};
  const std::vector<std::string> labels{"B", "B", "A", "A", "A", "C", "E", "E"};
  const auto r = separability_report(assign, labels);
  ASSERT_EQ(r.symbols.size(), 4u);
  EXPECT_EQ(r.symbols[0].label, "A");
  EXPECT_EQ(r.symbols[0].cluster, 1u);
  EXPECT_DOUBLE_EQ(r.symbols[0].purity, 1.0);
  EXPECT_FALSE(r.symbols[0].shared);
  // E splits evenly between 2 and 0; the tie goes to cluster 0, shared with B.
  EXPECT_EQ(r.symbols[3].cluster, 0u);
  EXPECT_DOUBLE_EQ(r.symbols[3].purity, 0.5);
  EXPECT_TRUE(r.symbols[3].shared);
  EXPECT_TRUE(r.symbols[1].shared);
  EXPECT_FALSE(r.separable);
  EXPECT_THROW(separability_report(assign, std::vector<std::string>{"A"}), Error);
}

}  // namespace
