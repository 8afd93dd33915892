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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gestmpc/error.hpp"
#include "gestmpc/metrics.hpp"

namespace {

using namespace gestmpc;
using namespace gestmpc::metrics;

// Pairwise Mann-Whitney statistic.
double brute_auc(const std::vector<double>& s, const std::vector<int>& p) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (p[i] && !p[j]) {
        ++pairs;
        wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
      }
  return wins / static_cast<double>(pairs);
}

TEST(Metrics, RocKnownExample) {
  const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> p{0, 0, 1, 1};
  const auto c = roc_curve(s, p);
  EXPECT_DOUBLE_EQ(c.auc, 0.75);
  EXPECT_EQ(c.fpr, (std::vector<double>{0, 0, 0.5, 0.5, 1}));
  EXPECT_EQ(c.tpr, (std::vector<double>{0, 0.5, 0.5, 1, 1}));
  EXPECT_TRUE(std::isinf(c.thresholds[0]));
}

TEST(Metrics, AucMatchesPairwiseWithTies) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> level(0, 5), bit(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(3 + trial % 20);
    std::vector<int> p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = level(rng) * 0.5;
      p[i] = bit(rng);
    }
    p[0] = 1;
    p[1] = 0;
    const auto c = roc_curve(s, p);
    EXPECT_NEAR(c.auc, brute_auc(s, p), 1e-12);
    EXPECT_DOUBLE_EQ(c.fpr.back(), 1.0);
    EXPECT_DOUBLE_EQ(c.tpr.back(), 1.0);
    for (std::size_t i = 1; i < c.fpr.size(); ++i) {
      EXPECT_GE(c.fpr[i], c.fpr[i - 1]);
      EXPECT_GE(c.tpr[i], c.tpr[i - 1]);
    }
  }
}

TEST(Metrics, AucUndefinedWithOneClass) {
  EXPECT_TRUE(std::isnan(roc_curve(std::vector<double>{1, 2}, std::vector<int>{1, 1}).auc));
  EXPECT_THROW(roc_curve(std::vector<double>{1}, std::vector<int>{1, 0}), Error);
}

TEST(Metrics, EvaluateByHand) {
  // true: 0 0 1 1 2 3 ; predicted: 0 1 1 1 2 2
  RealMatrix logits(6, 4);
  const int pred[] = {0, 1, 1, 1, 2, 2};
  for (std::size_t i = 0; i < 6; ++i) logits(i, static_cast<std::size_t>(pred[i])) = 1.0;
  const std::vector<int> labels{0, 0, 1, 1, 2, 3};
  const auto r = evaluate(logits, labels);
  EXPECT_EQ(r.samples, 6u);
  EXPECT_DOUBLE_EQ(r.accuracy, 4.0 / 6.0);
  EXPECT_EQ(r.confusion(0, 1), 1u);
  EXPECT_EQ(r.confusion(3, 2), 1u);
  // per class (p, r): 0 (1, .5) 1 (2/3, 1) 2 (.5, 1) 3 (0, 0); supports 2 2 1 1
  const double f0 = 2 * 1 * 0.5 / 1.5, f1 = 2 * (2.0 / 3) / (5.0 / 3), f2 = 2 * 0.5 / 1.5;
  EXPECT_NEAR(r.precision, (2 * 1 + 2 * (2.0 / 3) + 0.5) / 6, 1e-12);
  EXPECT_NEAR(r.recall, (2 * 0.5 + 2 * 1 + 1) / 6, 1e-12);
  EXPECT_NEAR(r.f1, (2 * f0 + 2 * f1 + f2) / 6, 1e-12);
  // each row has one wrong unit (or none): 2 wrong rows x 2 unit errors
  EXPECT_NEAR(r.mse, 4.0 / 24.0, 1e-12);
  EXPECT_NEAR(r.rmse, std::sqrt(4.0 / 24.0), 1e-12);
  EXPECT_EQ(r.auc.size(), 4u);
}

TEST(Metrics, PerfectScores) {
  RealMatrix logits(8, 4);
  std::vector<int> labels;
  for (std::size_t i = 0; i < 8; ++i) {
    labels.push_back(static_cast<int>(i % 4));
    logits(i, i % 4) = 1.0;
  }
  const auto r = evaluate(logits, labels);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.micro_auc, 1.0);
  EXPECT_DOUBLE_EQ(r.macro_auc, 1.0);
  EXPECT_DOUBLE_EQ(r.mse, 0.0);
}

TEST(Metrics, JsonAndRocCsv) {
  RealMatrix logits(4, 4);
  for (std::size_t i = 0; i < 4; ++i) logits(i, i) = 1.0;
  const std::vector<int> labels{0, 1, 2, 3};
  const std::vector<std::string> names{"A", "B", "C", "E"};
  const auto r = evaluate(logits, labels);
  const auto j = to_json(r, names);
  EXPECT_DOUBLE_EQ(j.at("accuracy").get<double>(), 1.0);
  std::ostringstream os;
  write_roc_csv(os, r, names);
  const auto text = os.str();
  EXPECT_EQ(text.rfind("curve,fpr,tpr,threshold\n", 0), 0u);
  EXPECT_NE(text.find("\nmicro,"), std::string::npos);
  EXPECT_NE(text.find("\nE,"), std::string::npos);
}

TEST(Metrics, RejectsBadInput) {
  EXPECT_THROW(evaluate(RealMatrix(0, 4), std::vector<int>{}), Error);
  EXPECT_THROW(evaluate(RealMatrix(2, 4), std::vector<int>{0}), Error);
  EXPECT_THROW(evaluate(RealMatrix(1, 4), std::vector<int>{4}), Error);
}

}  // namespace
