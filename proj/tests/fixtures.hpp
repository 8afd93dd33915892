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

// Shared fixtures for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

#include "gestmpc/matrix.hpp"
#include "gestmpc/model.hpp"
#include "gestmpc/mpc/context.hpp"
#include "gestmpc/random.hpp"
#include "gestmpc/segmentation.hpp"

namespace fixture {

namespace seg = gestmpc::segmentation;

// Transition table written out by hand for the default pause configuration
// (t1 = t2 = 2 s, eps = 0.5 s, min_gap = 0.5 s) over the event alphabet below.
enum Ev { kP02, kP10, kP20, kP35, kMotion, kReset, kEvCount };

inline seg::Event to_event(int e) {
  switch (e) {
    case kP02: return seg::Event::pause(0.2);
    case kP10: return seg::Event::pause(1.0);
    case kP20: return seg::Event::pause(2.0);
    case kP35: return seg::Event::pause(3.5);
    case kMotion: return seg::Event::motion();
    default: return seg::Event::reset();
  }
}

struct Row {
  seg::Phase next;
  double add;       // accumulator increment
  bool set;         // accumulator replaced by `add` instead
  bool emits;
};

inline Row table(seg::Phase p, int e) {
  using P = seg::Phase;
  static const double durations[] = {0.2, 1.0, 2.0, 3.5};
  switch (p) {
    case P::kIdle:
      if (e == kP20) return {P::kActive, 2.0, true, false};
      return {P::kIdle, 0.0, false, false};
    case P::kActive:
      if (e == kMotion) return {P::kActive, 0.0, false, true};
      if (e == kReset || e == kP02) return {P::kActive, 0.0, false, false};
      return {e == kP20 ? P::kClosed : P::kActive, durations[e], false, false};
    case P::kClosed:
      if (e == kReset) return {P::kIdle, 0.0, true, false};
      return {P::kClosed, 0.0, false, false};
  }
  return {p, 0.0, false, false};
}

// Runs every sequence of length 1..max_len through both `step` and the table.
// Returns the number of mismatching steps and counts the sequences checked.
inline std::size_t exhaustive_mismatches(std::size_t max_len, std::size_t* sequences) {
  const seg::PauseConfig cfg;
  std::size_t bad = 0, count = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= kEvCount;
    for (std::size_t code = 0; code < total; ++code) {
      ++count;
      seg::SessionState s;
      seg::Phase op = seg::Phase::kIdle;
      double oacc = 0.0;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i, c /= kEvCount) {
        const int e = static_cast<int>(c % kEvCount);
        const auto tr = seg::step(s, to_event(e), cfg);
        const auto row = table(op, e);
        op = row.next;
        oacc = row.set ? row.add : oacc + row.add;
        if (tr.state.phase != op || std::fabs(tr.state.pause_accumulator - oacc) > 1e-12 ||
            tr.emits_window != row.emits)
          ++bad;
        s = tr.state;
      }
    }
  }
  if (sequences) *sequences = count;
  return bad;
}

// Piecewise trace at `rate` Hz: each run is (samples, moving).
inline seg::Trace build_trace(const std::vector<std::pair<std::size_t, bool>>& runs,
                              double rate = 60.0) {
  seg::Trace t;
  for (const auto& [n, moving] : runs)
    for (std::size_t i = 0; i < n; ++i) {
      seg::MotionSample s;
      s.t = static_cast<double>(t.size()) / rate;
      if (moving) {
        const double ph = static_cast<double>(i) * 0.3;
        s.gx = 1.0 + 0.5 * std::sin(ph);
        s.gy = -0.8 * std::cos(ph);
        s.gz = 0.6;
      }
      t.push_back(s);
    }
  return t;
}

// Opening pause, three strokes separated by 1 s gaps, closing pause, then
// motion after the close that must not produce windows.
struct ThreeSymbolSession {
  seg::Trace trace;
  std::vector<std::pair<std::size_t, std::size_t>> truth;
};

inline ThreeSymbolSession three_symbol_session() {
  ThreeSymbolSession s;
  s.trace = build_trace({{120, false},
                         {54, true},
                         {60, false},
                         {54, true},
                         {60, false},
                         {54, true},
                         {120, false},
                         {60, true},
                         {60, false},
                         {30, true},
                         {60, false}});
  s.truth = {{120, 174}, {234, 288}, {348, 402}};
  return s;
}

// --- network parity ------------------------------------------------------------

inline gestmpc::RealMatrix gaussian(gestmpc::Prng& rng, std::size_t r, std::size_t c,
                                    double sd) {
  gestmpc::RealMatrix m(r, c);
  for (double& v : m.data()) v = sd * rng.normal();
  return m;
}

// Random parameters with non-zero biases.
inline gestmpc::model::ModelParams random_params(std::size_t d_in, std::uint64_t seed) {
  auto p = gestmpc::model::init_params(d_in, seed);
  gestmpc::Prng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  p.b1 = gaussian(rng, 1, p.b1.cols(), 0.1);
  p.b2 = gaussian(rng, 1, p.b2.cols(), 0.1);
  p.b3 = gaussian(rng, 1, p.b3.cols(), 0.1);
  return p;
}

// Standardized inputs: each column has zero mean and unit population spread.
inline gestmpc::RealMatrix standardized(std::size_t rows, std::size_t cols,
                                        std::uint64_t seed) {
  gestmpc::Prng rng(seed);
  auto x = gaussian(rng, rows, cols, 1.0);
  for (std::size_t j = 0; j < cols; ++j) {
    double m = 0, ss = 0;
    for (std::size_t i = 0; i < rows; ++i) m += x(i, j);
    m /= static_cast<double>(rows);
    for (std::size_t i = 0; i < rows; ++i) ss += (x(i, j) - m) * (x(i, j) - m);
    const double sd = std::sqrt(ss / static_cast<double>(rows));
    for (std::size_t i = 0; i < rows; ++i) x(i, j) = (x(i, j) - m) / sd;
  }
  return x;
}

inline double max_abs_diff(const gestmpc::RealMatrix& a, const gestmpc::RealMatrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a.data()[i] - b.data()[i]));
  return d;
}

struct Parity {
  double logits = 0.0;    // max abs difference
  double gradient = 0.0;  // max abs difference over all six tensors
};

// Shared forward and backward against the plaintext network.
inline Parity network_parity(std::size_t parties, std::size_t d_in, std::uint64_t seed,
                             double alpha = 0.01) {
  namespace model = gestmpc::model;
  namespace mpc = gestmpc::mpc;
  const auto p = random_params(d_in, seed);
  const auto x = standardized(8, d_in, seed + 1);
  std::vector<int> labels;
  for (int i = 0; i < 8; ++i) labels.push_back(i % 4);
  const auto y = model::one_hot(labels);

  const auto f = model::forward(p, x, alpha);
  const auto g = model::backward(p, f.cache, f.logits, y);

  mpc::LocalContext ctx(parties, seed + 2);
  const auto sp = model::share_params(ctx, 0, &p, d_in);
  const auto sx = mpc::share(ctx, 0, &x, {x.rows(), x.cols()});
  const auto sy = mpc::share(ctx, 0, &y, {y.rows(), y.cols()});
  const auto sf = model::forward(ctx, sp, sx, alpha);
  const auto sg = model::backward(ctx, sp, sf, sy);

  Parity out;
  out.logits = max_abs_diff(mpc::open(ctx, sf.logits), f.logits);
  const auto og = model::open_params(ctx, sg);
  const auto a = og.tensors();
  const auto b = g.tensors();
  for (std::size_t i = 0; i < a.size(); ++i)
    out.gradient = std::max(out.gradient, max_abs_diff(*a[i], *b[i]));
  return out;
}

// Largest relative error between backward() and central differences of
// C * loss over `probes` random coordinates of every tensor, measured as
// |fd - g| / max(|fd|, |g|, floor).
inline double finite_difference_error(std::size_t d_in, std::uint64_t seed,
                                      std::size_t probes = 12, double alpha = 0.01) {
  namespace model = gestmpc::model;
  auto p = random_params(d_in, seed);
  const auto x = standardized(8, d_in, seed + 1);
  std::vector<int> labels;
  for (int i = 0; i < 8; ++i) labels.push_back((i * 3) % 4);
  const auto y = model::one_hot(labels);
  const auto f = model::forward(p, x, alpha);
  const auto g = model::backward(p, f.cache, f.logits, y);
  const double c = static_cast<double>(model::kClasses);
  auto loss = [&] { return c * model::mse_loss(model::forward(p, x, alpha).logits, y); };

  gestmpc::Prng rng(seed + 3);
  const double h = 1e-6, floor = 1e-5;
  double worst = 0.0;
  const auto ps = p.tensors();
  const auto gs = g.tensors();
  for (std::size_t t = 0; t < ps.size(); ++t) {
    for (std::size_t k = 0; k < probes; ++k) {
      const auto idx = rng.below(ps[t]->size());
      double& w = ps[t]->data()[idx];
      const double saved = w;
      w = saved + h;
      const double up = loss();
      w = saved - h;
      const double down = loss();
      w = saved;
      const double fd = (up - down) / (2 * h);
      const double an = gs[t]->data()[idx];
      worst = std::max(worst, std::fabs(fd - an) / std::max({std::fabs(fd), std::fabs(an), floor}));
    }
  }
  return worst;
}

}  // namespace fixture
