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

#include "gestmpc/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gestmpc/error.hpp"

namespace gestmpc::features {

namespace {

constexpr double kFloor = 1e-12;

std::string fmt_level(double q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Sum of squared deviations, and whether the spread is negligible relative to
// the signal's magnitude.
struct Moments {
  double mean = 0.0;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;  // central sums
  bool flat = false;
};

Moments moments(std::span<const double> x) {
  Moments m;
  m.mean = mean_of(x);
  double scale = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    m.m2 += d * d;
    m.m3 += d * d * d;
    m.m4 += d * d * d * d;
    scale = std::max(scale, std::fabs(v));
  }
  const double sd = std::sqrt(m.m2 / static_cast<double>(x.size()));
  m.flat = sd <= 1e-10 * std::max(1.0, scale);
  return m;
}

std::size_t strike(std::span<const double> x, double mean, bool above) {
  std::size_t best = 0, run = 0;
  for (double v : x) {
    if (above ? v > mean : v < mean) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

double autocovariance(std::span<const double> x, double mean, std::size_t lag) {
  if (lag >= x.size()) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i + lag < x.size(); ++i) s += (x[i] - mean) * (x[i + lag] - mean);
  return s / static_cast<double>(x.size() - lag);
}

void spectral(std::span<const double> x, const FeatureConfig& cfg, std::vector<double>& out) {
  const std::size_t length = cfg.fft_length == 0 ? x.size() : cfg.fft_length;
  const auto mag = magnitude_spectrum(x, length);
  const std::size_t bins = mag.size();
  const double df = cfg.sample_rate / static_cast<double>(length);

  double total = 0.0, total_ac = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    total += mag[k];
    if (k > 0) total_ac += mag[k];
  }
  // Negligible non-DC energy: a constant (or numerically constant) window.
  const bool silent = total_ac <= 1e-9 * std::max(1.0, mag[0]);

  double centroid = 0.0, spread = 0.0, skew = 0.0, kurt = 0.0, slope = 0.0, decrease = 0.0;
  if (!silent) {
    for (std::size_t k = 1; k < bins; ++k) centroid += k * df * mag[k];
    centroid /= total_ac;
    double v2 = 0.0, v3 = 0.0, v4 = 0.0;
    for (std::size_t k = 1; k < bins; ++k) {
      const double d = k * df - centroid;
      v2 += d * d * mag[k];
      v3 += d * d * d * mag[k];
      v4 += d * d * d * d * mag[k];
    }
    spread = std::sqrt(v2 / total_ac);
    if (spread > 1e-9 * df) {
      skew = v3 / (total_ac * spread * spread * spread);
      kurt = v4 / (total_ac * spread * spread * spread * spread);
    }
    const std::size_t nb = bins - 1;
    if (nb >= 2) {
      double fm = 0.0, mm = 0.0;
      for (std::size_t k = 1; k < bins; ++k) {
        fm += k * df;
        mm += mag[k];
      }
      fm /= static_cast<double>(nb);
      mm /= static_cast<double>(nb);
      double num = 0.0, den = 0.0;
      for (std::size_t k = 1; k < bins; ++k) {
        num += (k * df - fm) * (mag[k] - mm);
        den += (k * df - fm) * (k * df - fm);
      }
      slope = num / den;
      double dnum = 0.0, dden = 0.0;
      for (std::size_t k = 2; k < bins; ++k) {
        dnum += (mag[k] - mag[1]) / static_cast<double>(k - 1);
        dden += mag[k];
      }
      if (dden > 1e-9 * total_ac) decrease = dnum / dden;
    }
  }

  double log_sum = 0.0;
  for (double m : mag) log_sum += std::log(std::max(m, kFloor));
  const double flatness = std::exp(log_sum / static_cast<double>(bins)) /
                          std::max(total / static_cast<double>(bins), kFloor);

  double rolloff = 0.0;
  if (total > 0.0) {
    double cum = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      cum += mag[k];
      if (cum >= cfg.rolloff * total) {
        rolloff = k * df;
        break;
      }
    }
  }

  out.insert(out.end(), {centroid, flatness, kurt, skew, decrease, spread, rolloff, slope});
}

}  // namespace

void FeatureConfig::validate() const {
  require(!quantiles.empty(), ErrorKind::kInvalidArgument, "need at least one quantile level");
  for (double q : quantiles)
    require(q > 0.0 && q < 1.0, ErrorKind::kInvalidArgument,
            "quantile levels must lie in (0, 1)");
  require(!lags.empty(), ErrorKind::kInvalidArgument, "need at least one lag");
  for (auto l : lags) require(l >= 1, ErrorKind::kInvalidArgument, "lags must be >= 1");
  require(entropy_m >= 1 && entropy_r > 0.0, ErrorKind::kInvalidArgument,
          "invalid sample-entropy parameters");
  require(rolloff > 0.0 && rolloff < 1.0, ErrorKind::kInvalidArgument,
          "rolloff fraction must lie in (0, 1)");
  require(sample_rate > 0.0, ErrorKind::kInvalidArgument, "sample rate must be positive");
}

std::vector<std::string> axis_feature_names(const FeatureConfig& cfg) {
  std::vector<std::string> n = {"mean", "std", "iqr", "abs_energy", "mean_abs_deviation",
                                "sem", "mean_change"};
  for (auto l : cfg.lags) n.push_back("autocov_lag" + std::to_string(l));
  n.insert(n.end(), {"longest_strike_above_mean", "variance", "abs_sum_of_changes",
                     "kurtosis", "sample_entropy"});
  for (auto l : cfg.lags) n.push_back("autocorr_lag" + std::to_string(l));
  n.insert(n.end(), {"mean_abs_change", "sum", "skewness"});
  for (double q : cfg.quantiles) n.push_back("quantile_" + fmt_level(q));
  n.insert(n.end(), {"median", "longest_strike_below_mean", "cid"});
  n.insert(n.end(), {"spectral_centroid", "spectral_flatness", "spectral_kurtosis",
                     "spectral_skewness", "spectral_decrease", "spectral_spread",
                     "spectral_rolloff", "spectral_slope"});
  return n;
}

std::vector<std::string> feature_names(const FeatureConfig& cfg) {
  std::vector<std::string> out;
  for (const char* axis : {"gx_", "gy_", "gz_"})
    for (const auto& n : axis_feature_names(cfg)) out.push_back(axis + n);
  return out;
}

double quantile(std::span<const double> x, double q) {
  require(!x.empty(), ErrorKind::kInvalidArgument, "quantile of an empty sample");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double sample_entropy(std::span<const double> x, std::size_t m, double r) {
  const std::size_t n = x.size();
  require(n > m + 1, ErrorKind::kInvalidArgument, "signal too short for sample entropy");
  const std::size_t templates = n - m;
  auto match = [&](std::size_t i, std::size_t j, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k)
      if (std::fabs(x[i + k] - x[j + k]) > r) return false;
    return true;
  };
  std::size_t b = 0, a = 0;
  for (std::size_t i = 0; i < templates; ++i)
    for (std::size_t j = i + 1; j < templates; ++j) {
      if (!match(i, j, m)) continue;
      ++b;
      if (std::fabs(x[i + m] - x[j + m]) <= r) ++a;
    }
  if (a == 0 || b == 0) return std::log(static_cast<double>(templates));
  return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double skewness(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  require(x.size() >= 3, ErrorKind::kInvalidArgument, "skewness needs three samples");
  const auto m = moments(x);
  if (m.flat) return 0.0;
  const double g1 = (m.m3 / n) / std::pow(m.m2 / n, 1.5);
  return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

double kurtosis(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  require(x.size() >= 4, ErrorKind::kInvalidArgument, "kurtosis needs four samples");
  const auto m = moments(x);
  if (m.flat) return 0.0;
  return n * (n + 1.0) * (n - 1.0) * m.m4 / ((n - 2.0) * (n - 3.0) * m.m2 * m.m2) -
         3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
}

std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t length) {
  require(length >= x.size() && length > 0, ErrorKind::kInvalidArgument,
          "DFT length shorter than the window");
  const std::size_t bins = length / 2 + 1;
  std::vector<double> mag(bins);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(length);
  for (std::size_t k = 0; k < bins; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      const double ang = w * static_cast<double>((k * t) % length);
      re += x[t] * std::cos(ang);
      im -= x[t] * std::sin(ang);
    }
    mag[k] = std::hypot(re, im);
  }
  return mag;
}

double abs_energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double abs_sum_of_changes(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += std::fabs(x[i] - x[i - 1]);
  return s;
}

double mean_abs_change(std::span<const double> x) {
  require(x.size() >= 2, ErrorKind::kInvalidArgument, "mean change needs two samples");
  return abs_sum_of_changes(x) / static_cast<double>(x.size() - 1);
}

double cid(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += (x[i] - x[i - 1]) * (x[i] - x[i - 1]);
  return std::sqrt(s);
}

std::size_t longest_strike(std::span<const double> x, bool above) {
  require(!x.empty(), ErrorKind::kInvalidArgument, "strike of an empty sample");
  const auto m = moments(x);
  return m.flat ? 0 : strike(x, m.mean, above);
}

std::vector<double> extract_axis(std::span<const double> x, const FeatureConfig& cfg) {
  require(x.size() >= 4, ErrorKind::kInvalidArgument,
          "feature extraction needs at least 4 samples, got " + std::to_string(x.size()));
  for (double v : x)
    require(std::isfinite(v), ErrorKind::kInvalidArgument, "signal contains non-finite values");
  require(cfg.fft_length == 0 || x.size() <= cfg.fft_length, ErrorKind::kInvalidArgument,
          "window longer than the configured DFT length");
  const auto n = static_cast<double>(x.size());
  const auto m = moments(x);
  const double var = m.flat ? 0.0 : m.m2 / n;
  const double sd = std::sqrt(var);

  double sum = 0.0, mad = 0.0;
  for (double v : x) {
    sum += v;
    mad += std::fabs(v - m.mean);
  }
  const double abs_changes = abs_sum_of_changes(x);

  std::vector<double> out;
  out.reserve(cfg.per_axis());
  out.push_back(m.mean);
  out.push_back(sd);
  out.push_back(quantile(x, 0.75) - quantile(x, 0.25));
  out.push_back(abs_energy(x));
  out.push_back(mad / n);
  out.push_back(m.flat ? 0.0 : std::sqrt(m.m2 / (n - 1.0)) / std::sqrt(n));
  out.push_back((x.back() - x.front()) / (n - 1.0));
  for (auto lag : cfg.lags) out.push_back(m.flat ? 0.0 : autocovariance(x, m.mean, lag));
  out.push_back(m.flat ? 0.0 : static_cast<double>(strike(x, m.mean, true)));
  out.push_back(var);
  out.push_back(abs_changes);
  out.push_back(kurtosis(x));
  out.push_back(sample_entropy(x, cfg.entropy_m, m.flat ? 0.0 : cfg.entropy_r * sd));
  for (auto lag : cfg.lags)
    out.push_back(m.flat ? 0.0 : autocovariance(x, m.mean, lag) / var);
  out.push_back(mean_abs_change(x));
  out.push_back(sum);
  out.push_back(skewness(x));
  for (double q : cfg.quantiles) out.push_back(quantile(x, q));
  out.push_back(quantile(x, 0.5));
  out.push_back(m.flat ? 0.0 : static_cast<double>(strike(x, m.mean, false)));
  out.push_back(cid(x));
  spectral(x, cfg, out);
  return out;
}

std::vector<double> extract(std::span<const segmentation::MotionSample> samples,
                            const FeatureConfig& cfg) {
  std::vector<double> gx, gy, gz;
  for (const auto& s : samples) {
    gx.push_back(s.gx);
    gy.push_back(s.gy);
    gz.push_back(s.gz);
  }
  auto out = extract_axis(gx, cfg);
  for (const auto* axis : {&gy, &gz}) {
    const auto block = extract_axis(*axis, cfg);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::vector<double> extract(const segmentation::GestureWindow& window,
                            const FeatureConfig& cfg) {
  return extract(window.samples, cfg);
}

RealMatrix extract_batch(std::span<const segmentation::GestureWindow> windows,
                         const FeatureConfig& cfg) {
  cfg.validate();
  const std::size_t dim = cfg.dimension();
  RealMatrix out(windows.size(), dim);
  std::string error;
  ErrorKind kind = ErrorKind::kInvalidArgument;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(windows.size()); ++i) {
    try {
      const auto row = extract(windows[static_cast<std::size_t>(i)], cfg);
      std::copy(row.begin(), row.end(), out.row(static_cast<std::size_t>(i)).begin());
    } catch (const Error& e) {
#pragma omp critical
      if (error.empty()) {
        error = "window " + std::to_string(i) + ": " + e.what();
        kind = e.kind();
      }
    }
  }
  if (!error.empty()) fail(kind, error);
  return out;
}

std::vector<double> StandardizationStats::apply(std::span<const double> row) const {
  require(row.size() == mean.size(), ErrorKind::kShapeMismatch,
          "feature vector does not match the standardizer");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    out[j] = stddev[j] > 0.0 ? (row[j] - mean[j]) / stddev[j] : 0.0;
  return out;
}

RealMatrix StandardizationStats::apply(const RealMatrix& x) const {
  RealMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = apply(x.row(i));
    std::copy(r.begin(), r.end(), out.row(i).begin());
  }
  return out;
}

StandardizationStats fit_standardizer(const RealMatrix& train) {
  require(train.rows() >= 2, ErrorKind::kInvalidArgument,
          "standardization needs at least two training rows");
  StandardizationStats st;
  st.mean.assign(train.cols(), 0.0);
  st.stddev.assign(train.cols(), 0.0);
  const auto n = static_cast<double>(train.rows());
  for (std::size_t j = 0; j < train.cols(); ++j) {
    double s = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) {
      s += train(i, j);
      scale = std::max(scale, std::fabs(train(i, j)));
    }
    const double mu = s / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) ss += (train(i, j) - mu) * (train(i, j) - mu);
    const double sd = std::sqrt(ss / n);
    st.mean[j] = mu;
    st.stddev[j] = sd <= 1e-12 * std::max(1.0, scale) ? 0.0 : sd;
  }
  return st;
}

}  // namespace gestmpc::features
