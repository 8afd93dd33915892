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
#include <span>
#include <string>
#include <vector>

#include "gestmpc/matrix.hpp"
#include "gestmpc/segmentation.hpp"

namespace gestmpc::features {

struct FeatureConfig {
  std::vector<double> quantiles{0.25, 0.75};
  std::vector<std::size_t> lags{1, 2};
  std::size_t entropy_m = 2;
  double entropy_r = 0.2;  // tolerance as a fraction of the standard deviation
  double rolloff = 0.85;
  double sample_rate = 60.0;  // Hz
  // 0 analyses each window at its own length; otherwise windows are
  // zero-padded to this DFT length (and may not exceed it).
  std::size_t fft_length = 0;

  void validate() const;
  std::size_t temporal_count() const { return 18 + quantiles.size() + 2 * lags.size(); }
  std::size_t per_axis() const { return temporal_count() + 8; }
  std::size_t dimension() const { return 3 * per_axis(); }
};

// Names of one axis block, in extraction order (without the axis prefix).
std::vector<std::string> axis_feature_names(const FeatureConfig& cfg);
// Full names, prefixed gx_, gy_ and gz_.
std::vector<std::string> feature_names(const FeatureConfig& cfg);

// Throws kInvalidArgument on fewer than 4 samples or non-finite input.
std::vector<double> extract_axis(std::span<const double> signal, const FeatureConfig& cfg);

// gx block, then gy, then gz.
std::vector<double> extract(const segmentation::GestureWindow& window,
                            const FeatureConfig& cfg);
std::vector<double> extract(std::span<const segmentation::MotionSample> samples,
                            const FeatureConfig& cfg);

// One row per window, computed in parallel with rows in input order.
RealMatrix extract_batch(std::span<const segmentation::GestureWindow> windows,
                         const FeatureConfig& cfg);

// Individual statistics, exposed for testing.
double quantile(std::span<const double> x, double q);  // linear interpolation
double sample_entropy(std::span<const double> x, std::size_t m, double r);
double skewness(std::span<const double> x);  // bias-adjusted
double kurtosis(std::span<const double> x);  // bias-adjusted excess
std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t length);
double abs_energy(std::span<const double> x);
double abs_sum_of_changes(std::span<const double> x);
double mean_abs_change(std::span<const double> x);  // needs two samples
double cid(std::span<const double> x);
// Longest run strictly above (below) the mean; 0 for a flat signal.
std::size_t longest_strike(std::span<const double> x, bool above);

struct StandardizationStats {
  std::vector<double> mean;
  std::vector<double> stddev;  // population; 0 marks a constant column

  std::vector<double> apply(std::span<const double> row) const;
  RealMatrix apply(const RealMatrix& x) const;
};

// Throws kInvalidArgument with fewer than two rows.
StandardizationStats fit_standardizer(const RealMatrix& train);

}  // namespace gestmpc::features
