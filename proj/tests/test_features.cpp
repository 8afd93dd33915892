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
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gestmpc/error.hpp"
#include "gestmpc/features.hpp"

namespace {

using namespace gestmpc::features;
using gestmpc::Error;
using gestmpc::RealMatrix;

std::size_t index_of(const std::string& name) {
  const auto names = axis_feature_names(FeatureConfig{});
  const auto it = std::find(names.begin(), names.end(), name);
  EXPECT_NE(it, names.end()) << name;
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<double> tone(double hz, std::size_t n, double rate = 60.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / rate);
  return x;
}

TEST(Features, HandComputableOnOneTwoThree) {
  const std::vector<double> x{1, 2, 3};
  EXPECT_DOUBLE_EQ(abs_energy(x), 14.0);
  EXPECT_DOUBLE_EQ(abs_sum_of_changes(x), 2.0);
  EXPECT_DOUBLE_EQ(mean_abs_change(x), 1.0);
  EXPECT_DOUBLE_EQ(cid(x), std::sqrt(2.0));
  EXPECT_EQ(longest_strike(x, true), 1u);
  EXPECT_EQ(longest_strike(x, false), 1u);
  EXPECT_DOUBLE_EQ(quantile(x, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(quantile(x, 0.25), 1.5);
  EXPECT_DOUBLE_EQ(quantile(x, 0.75), 2.5);
  EXPECT_DOUBLE_EQ(skewness(x), 0.0);
}

TEST(Features, StatisticsAgainstDirectFormulas) {
  const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
  const FeatureConfig cfg;
  const auto f = extract_axis(x, cfg);
  EXPECT_DOUBLE_EQ(f[index_of("mean")], 5.0);
  EXPECT_DOUBLE_EQ(f[index_of("std")], 2.0);
  EXPECT_DOUBLE_EQ(f[index_of("variance")], 4.0);
  EXPECT_DOUBLE_EQ(f[index_of("sum")], 40.0);
  EXPECT_DOUBLE_EQ(f[index_of("abs_energy")], 232.0);
  EXPECT_DOUBLE_EQ(f[index_of("mean_abs_deviation")], 1.5);
  EXPECT_DOUBLE_EQ(f[index_of("mean_change")], 1.0);
  EXPECT_DOUBLE_EQ(f[index_of("median")], 4.5);
  EXPECT_DOUBLE_EQ(f[index_of("iqr")], 1.5);
  EXPECT_DOUBLE_EQ(f[index_of("longest_strike_above_mean")], 2.0);
  EXPECT_DOUBLE_EQ(f[index_of("longest_strike_below_mean")], 4.0);
  EXPECT_NEAR(f[index_of("sem")], std::sqrt(32.0 / 7.0) / std::sqrt(8.0), 1e-12);
  // lag-1 autocovariance: mean of (x_i - 5)(x_{i+1} - 5) over 7 pairs
  EXPECT_NEAR(f[index_of("autocov_lag1")], (3.0 + 1 + 1 + 0 + 0 + 0 + 8) / 7.0, 1e-12);
}

TEST(Features, ConstantSignal) {
  const std::vector<double> x(16, 3.0);
  const auto f = extract_axis(x, FeatureConfig{});
  ASSERT_EQ(f.size(), 32u);
  for (double v : f) EXPECT_TRUE(std::isfinite(v));
  EXPECT_DOUBLE_EQ(f[index_of("mean")], 3.0);
  EXPECT_DOUBLE_EQ(f[index_of("median")], 3.0);
  EXPECT_DOUBLE_EQ(f[index_of("sum")], 48.0);
  EXPECT_DOUBLE_EQ(f[index_of("abs_energy")], 144.0);
  for (const char* zero :
       {"std", "variance", "iqr", "mean_abs_deviation", "sem", "mean_change", "autocov_lag1",
        "autocorr_lag2", "abs_sum_of_changes", "mean_abs_change", "cid", "skewness",
        "kurtosis", "longest_strike_above_mean", "longest_strike_below_mean",
        "spectral_centroid", "spectral_spread", "spectral_slope", "spectral_rolloff"})
    EXPECT_DOUBLE_EQ(f[index_of(zero)], 0.0) << zero;
}

TEST(Features, SpectralCentroidOfTone) {
  const FeatureConfig cfg;
  // Whole numbers of periods, so the tone falls on a single bin.
  for (std::size_t n : {60u, 120u, 180u, 240u}) {
    const auto f = extract_axis(tone(5.0, n), cfg);
    EXPECT_NEAR(f[index_of("spectral_centroid")], 5.0, 0.5) << n;
    EXPECT_NEAR(f[index_of("spectral_spread")], 0.0, 1e-4) << n;
  }
}

TEST(Features, MagnitudeSpectrumOfTone) {
  const auto mag = magnitude_spectrum(tone(5.0, 120), 120);
  ASSERT_EQ(mag.size(), 61u);
  const auto peak = std::max_element(mag.begin(), mag.end()) - mag.begin();
  EXPECT_EQ(peak, 10);
  EXPECT_THROW(magnitude_spectrum(tone(5.0, 120), 100), Error);
}

TEST(Features, DefaultDimensionAndNames) {
  const FeatureConfig cfg;
  EXPECT_EQ(cfg.dimension(), 96u);
  const auto names = feature_names(cfg);
  EXPECT_EQ(names.size(), 96u);
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), 96u);
  EXPECT_EQ(names.front(), "gx_mean");
  EXPECT_EQ(names[32], "gy_mean");
  EXPECT_EQ(names.back(), "gz_spectral_slope");
}

TEST(Features, AxisBlocksIndependent) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  std::vector<gestmpc::segmentation::MotionSample> s(40);
  for (auto& m : s) {
    m.gx = n(rng);
    m.gy = m.gx;
    m.gz = n(rng);
  }
  const FeatureConfig cfg;
  const auto f = extract(s, cfg);
  ASSERT_EQ(f.size(), 96u);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_EQ(f[j], f[32 + j]) << j;
  std::vector<double> gz;
  for (const auto& m : s) gz.push_back(m.gz);
  const auto z = extract_axis(gz, cfg);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_EQ(f[64 + j], z[j]) << j;
}

TEST(Features, ReversalInvariance) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0, 1);
  const FeatureConfig cfg;
  const std::set<std::string> variant{"mean_change", "sample_entropy"};
  const auto names = axis_feature_names(cfg);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> x(8 + static_cast<std::size_t>(trial) * 3);
    for (auto& v : x) v = n(rng);
    auto r = x;
    std::reverse(r.begin(), r.end());
    const auto fx = extract_axis(x, cfg), fr = extract_axis(r, cfg);
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (variant.count(names[j])) continue;
      EXPECT_NEAR(fx[j], fr[j], 1e-9 * std::max(1.0, std::fabs(fx[j]))) << names[j];
    }
    EXPECT_NEAR(fx[index_of("mean_change")], -fr[index_of("mean_change")], 1e-12);
  }
}

TEST(Features, ShiftAndScaleProperties) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> x(50);
  for (auto& v : x) v = n(rng);
  auto y = x;
  for (auto& v : y) v = 2.0 * v + 7.0;
  const FeatureConfig cfg;
  const auto fx = extract_axis(x, cfg), fy = extract_axis(y, cfg);
  EXPECT_NEAR(fy[index_of("mean")], 2.0 * fx[index_of("mean")] + 7.0, 1e-12);
  EXPECT_NEAR(fy[index_of("std")], 2.0 * fx[index_of("std")], 1e-12);
  EXPECT_NEAR(fy[index_of("skewness")], fx[index_of("skewness")], 1e-9);
  EXPECT_NEAR(fy[index_of("kurtosis")], fx[index_of("kurtosis")], 1e-9);
  EXPECT_NEAR(fy[index_of("autocorr_lag1")], fx[index_of("autocorr_lag1")], 1e-9);
  EXPECT_NEAR(fy[index_of("sample_entropy")], fx[index_of("sample_entropy")], 1e-9);
}

TEST(Features, SampleEntropyKnownValue) {
  // Alternating signal: every template of length 2 and 3 repeats.
  std::vector<double> x;
  for (int i = 0; i < 20; ++i) x.push_back(i % 2 ? 1.0 : -1.0);
  EXPECT_NEAR(sample_entropy(x, 2, 0.1), 0.0, 1e-12);
}

TEST(Features, RejectsBadInput) {
  const FeatureConfig cfg;
  EXPECT_THROW(extract_axis(std::vector<double>{1, 2, 3}, cfg), Error);
  EXPECT_THROW(extract_axis(std::vector<double>{1, 2, std::nan(""), 4}, cfg), Error);
  FeatureConfig small;
  small.fft_length = 8;
  EXPECT_THROW(extract_axis(std::vector<double>(10, 1.0), small), Error);
  FeatureConfig bad;
  bad.quantiles = {1.5};
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_THROW(mean_abs_change(std::vector<double>{1}), Error);
}

TEST(Features, BatchMatchesSerialInOrder) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0, 1);
  std::vector<gestmpc::segmentation::GestureWindow> windows(17);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    windows[w].samples.resize(20 + 5 * w);
    for (auto& m : windows[w].samples) {
      m.gx = n(rng);
      m.gy = n(rng);
      m.gz = n(rng);
    }
  }
  const FeatureConfig cfg;
  const auto batch = extract_batch(windows, cfg);
  ASSERT_EQ(batch.rows(), windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto row = extract(windows[w], cfg);
    for (std::size_t j = 0; j < row.size(); ++j) EXPECT_EQ(batch(w, j), row[j]);
  }
  windows[4].samples.resize(2);
  EXPECT_THROW(extract_batch(windows, cfg), Error);
}

TEST(Features, Standardizer) {
  RealMatrix x(5, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = 4.0;
    x(i, 2) = static_cast<double>(i * i) - 3.0;
  }
  const auto st = fit_standardizer(x);
  EXPECT_DOUBLE_EQ(st.stddev[1], 0.0);
  const auto z = st.apply(x);
  for (std::size_t j : {0u, 2u}) {
    double s = 0, ss = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      s += z(i, j);
      ss += z(i, j) * z(i, j);
    }
    EXPECT_NEAR(s / 5, 0.0, 1e-12);
    EXPECT_NEAR(ss / 5, 1.0, 1e-12);
  }
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(z(i, 1), 0.0);
  EXPECT_THROW(fit_standardizer(RealMatrix(1, 3)), Error);
  EXPECT_THROW(st.apply(std::vector<double>(2)), Error);
}

}  // namespace
