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

#include "gestmpc/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gestmpc/error.hpp"
#include "gestmpc/random.hpp"

namespace gestmpc::synth {
namespace {

constexpr double kPi = std::numbers::pi;

struct Lobe {
  int axis;
  double amp;
  double cycles;  // half-periods over the stroke
  double phase;
};

const std::vector<Lobe>& lobes(const std::string& symbol) {
  static const std::vector<Lobe> a = {{0, 1.6, 1, 0}, {1, 0.9, 2, 0}};
  static const std::vector<Lobe> b = {{1, 1.5, 2, 0}, {2, 0.6, 1, 0}};
  static const std::vector<Lobe> c = {{0, 1.2, 2, kPi / 2}, {1, 1.2, 2, 0}, {2, 0.4, 3, 0}};
  static const std::vector<Lobe> e = {{0, -1.3, 3, 0}, {2, 1.4, 1, 0}, {1, 0.5, 4, 0}};
  static const std::vector<Lobe> d = {{0, 1.4, 1, 0}, {1, 1.0, 3, 0}};
  if (symbol == "A") return a;
  if (symbol == "B") return b;
  if (symbol == "C") return c;
  if (symbol == "E") return e;
  if (symbol == "D") return d;
  fail(ErrorKind::kInvalidArgument, "no stroke template for symbol '" + symbol + "'");
}

}  // namespace

BlobSet make_blobs(const BlobConfig& cfg) {
  require(cfg.classes >= 1 && cfg.dim >= 1 && cfg.sigma >= 0, ErrorKind::kInvalidArgument,
          "bad blob configuration");
  Prng rng(cfg.seed);
  RealMatrix centres(cfg.classes, cfg.dim);
  for (double& v : centres.data()) v = rng.normal();

  auto draw = [&](std::vector<int> labels, const std::string& split) {
    model::Dataset d;
    d.split = split;
    d.x = RealMatrix(labels.size(), cfg.dim);
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < cfg.dim; ++j)
        d.x(i, j) = centres(static_cast<std::size_t>(labels[i]), j) + cfg.sigma * rng.normal();
    d.labels = std::move(labels);
    return d;
  };

  std::vector<int> train_labels, test_labels;
  for (std::size_t i = 0; i < cfg.classes * cfg.train_per_class; ++i)
    train_labels.push_back(static_cast<int>(i % cfg.classes));
  for (std::size_t i = 0; i < cfg.test_size; ++i)
    test_labels.push_back(static_cast<int>(i % cfg.classes));
  BlobSet out;
  out.train = draw(std::move(train_labels), "train");
  out.test = draw(std::move(test_labels), "test");
  return out;
}

void TraceConfig::validate() const {
  require(users >= 1 && reps >= 1, ErrorKind::kInvalidArgument,
          "users and reps must be at least 1");
  require(!symbols.empty(), ErrorKind::kInvalidArgument, "no symbols requested");
  for (const auto& s : symbols) (void)lobes(s);
  require(sample_rate > 0 && noise >= 0 && stroke > 0, ErrorKind::kInvalidArgument,
          "bad sampling parameters");
  require(open_pause > open_jitter && gap > gap_jitter && close_pause > 0 && fidget >= 0,
          ErrorKind::kInvalidArgument, "bad pause layout");
}

std::vector<std::array<double, 3>> stroke_template(const std::string& symbol,
                                                   std::size_t samples) {
  std::vector<std::array<double, 3>> out(samples, {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    const double env = std::sin(kPi * u);
    for (const auto& l : lobes(symbol))
      out[i][static_cast<std::size_t>(l.axis)] +=
          l.amp * env * std::sin(kPi * l.cycles * u + l.phase);
  }
  return out;
}

std::vector<Session> make_sessions(const TraceConfig& cfg) {
  cfg.validate();
  std::vector<Session> out;
  const double dt = 1.0 / cfg.sample_rate;
  for (std::size_t u = 0; u < cfg.users; ++u) {
    Prng user_rng(derive_seed(cfg.seed, 1000 + u));
    const double amp = user_rng.uniform(0.8, 1.2);
    const double speed = user_rng.uniform(0.85, 1.15);
    for (std::size_t r = 0; r < cfg.reps; ++r) {
      Prng rng(derive_seed(cfg.seed, (u + 1) * 100000 + r));
      Session s{u, r, cfg.symbols, {}};
      for (std::size_t i = s.symbols.size(); i > 1; --i)
        std::swap(s.symbols[i - 1], s.symbols[rng.below(i)]);

      auto emit = [&](double gx, double gy, double gz) {
        segmentation::MotionSample m;
        m.t = static_cast<double>(s.trace.size()) * dt;
        m.gx = gx + cfg.noise * rng.normal();
        m.gy = gy + cfg.noise * rng.normal();
        m.gz = gz + cfg.noise * rng.normal();
        s.trace.push_back(m);
      };
      auto still = [&](double seconds) {
        const auto n = static_cast<std::size_t>(std::lround(seconds * cfg.sample_rate));
        for (std::size_t i = 0; i < n; ++i) emit(0, 0, 0);
      };

      still(cfg.open_pause + rng.uniform(-cfg.open_jitter, cfg.open_jitter));
      for (std::size_t k = 0; k < s.symbols.size(); ++k) {
        if (k > 0) still(cfg.gap + rng.uniform(-cfg.gap_jitter, cfg.gap_jitter));
        const double len = cfg.stroke / speed * rng.uniform(0.9, 1.1);
        const auto n = static_cast<std::size_t>(std::lround(len * cfg.sample_rate));
        const double gain = amp * rng.uniform(0.9, 1.1);
        for (const auto& g : stroke_template(s.symbols[k], n))
          emit(gain * g[0], gain * g[1], gain * g[2]);
      }
      still(cfg.close_pause);
      const auto n = static_cast<std::size_t>(std::lround(cfg.fidget * cfg.sample_rate));
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        emit(0.4 * std::sin(2 * kPi * 1.3 * t) + 0.3, 0.3 * std::cos(2 * kPi * 0.7 * t),
             0.2);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace gestmpc::synth
