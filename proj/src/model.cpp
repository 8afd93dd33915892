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

#include <chrono>
#include <cmath>

#include "gestmpc/error.hpp"
#include "gestmpc/kernels.hpp"
#include "gestmpc/model.hpp"
#include "gestmpc/random.hpp"

namespace gestmpc::model {

namespace {

RealMatrix gaussian(std::size_t rows, std::size_t cols, double sd, Prng& rng) {
  RealMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.normal(0.0, sd);
  return m;
}

RealMatrix affine(const RealMatrix& x, const RealMatrix& w, const RealMatrix& b) {
  auto z = kernels::matmul(x, w);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) += b(0, j);
  return z;
}

void leaky(const RealMatrix& z, double alpha, RealMatrix& a, RealMatrix& mask) {
  a = RealMatrix(z.rows(), z.cols());
  mask = RealMatrix(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = z.data()[i] > 0.0 ? 1.0 : alpha;
    mask.data()[i] = m;
    a.data()[i] = m * z.data()[i];
  }
}

RealMatrix col_sums(const RealMatrix& g) {
  RealMatrix s(1, g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) s(0, j) += g(i, j);
  return s;
}

void require_same(const RealMatrix& a, const RealMatrix& b, const char* what) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kShapeMismatch,
          std::string(what) + ": shape mismatch");
}

}  // namespace

int class_index(const std::string& name) {
  for (std::size_t i = 0; i < kClasses; ++i)
    if (kClassNames[i] == name) return static_cast<int>(i);
  fail(ErrorKind::kInvalidArgument, "unknown gesture symbol '" + name + "'");
}

std::string_view to_string(Mode m) { return m == Mode::kPlain ? "plain" : "mpc"; }

Mode parse_mode(const std::string& s) {
  if (s == "plain") return Mode::kPlain;
  if (s == "mpc") return Mode::kMpc;
  fail(ErrorKind::kInvalidArgument, "mode must be plain or mpc, got '" + s + "'");
}

ModelParams init_params(std::size_t d_in, std::uint64_t seed) {
  require(d_in >= 1, ErrorKind::kInvalidArgument, "input dimension must be positive");
  Prng rng(seed);
  ModelParams p;
  p.w1 = gaussian(d_in, kHidden1, 1.0 / std::sqrt(static_cast<double>(d_in)), rng);
  p.b1 = RealMatrix(1, kHidden1);
  p.w2 = gaussian(kHidden1, kHidden2, 1.0 / std::sqrt(static_cast<double>(kHidden1)), rng);
  p.b2 = RealMatrix(1, kHidden2);
  p.w3 = gaussian(kHidden2, kClasses, 1.0 / std::sqrt(static_cast<double>(kHidden2)), rng);
  p.b3 = RealMatrix(1, kClasses);
  return p;
}

ForwardResult forward(const ModelParams& p, const RealMatrix& x, double alpha) {
  require(x.cols() == p.d_in(), ErrorKind::kShapeMismatch,
          "input has " + std::to_string(x.cols()) + " features, model expects " +
              std::to_string(p.d_in()));
  ForwardResult r;
  r.cache.x = x;
  leaky(affine(x, p.w1, p.b1), alpha, r.cache.a1, r.cache.m1);
  leaky(affine(r.cache.a1, p.w2, p.b2), alpha, r.cache.a2, r.cache.m2);
  r.logits = affine(r.cache.a2, p.w3, p.b3);
  return r;
}

double mse_loss(const RealMatrix& o, const RealMatrix& y) {
  require_same(o, y, "mse_loss");
  require(!o.empty(), ErrorKind::kInvalidArgument, "mse_loss of an empty batch");
  double s = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const double d = y.data()[i] - o.data()[i];
    s += d * d;
  }
  return s / static_cast<double>(o.size());
}

Gradients backward(const ModelParams& p, const ForwardCache& c, const RealMatrix& o,
                   const RealMatrix& y) {
  require_same(o, y, "backward");
  require(c.x.rows() == o.rows() && c.a2.rows() == o.rows(), ErrorKind::kShapeMismatch,
          "forward cache does not belong to these outputs");
  const auto n = static_cast<double>(o.rows());
  RealMatrix g(o.rows(), o.cols());
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = 2.0 / n * (o.data()[i] - y.data()[i]);

  Gradients grad;
  grad.w3 = kernels::matmul(kernels::transpose(c.a2), g);
  grad.b3 = col_sums(g);
  g = kernels::matmul(g, kernels::transpose(p.w3));
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] *= c.m2.data()[i];
  grad.w2 = kernels::matmul(kernels::transpose(c.a1), g);
  grad.b2 = col_sums(g);
  g = kernels::matmul(g, kernels::transpose(p.w2));
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] *= c.m1.data()[i];
  grad.w1 = kernels::matmul(kernels::transpose(c.x), g);
  grad.b1 = col_sums(g);
  return grad;
}

void sgd_step(ModelParams& p, const Gradients& g, double lr) {
  auto ps = p.tensors();
  const auto gs = g.tensors();
  for (std::size_t t = 0; t < ps.size(); ++t) {
    require_same(*ps[t], *gs[t], "sgd_step");
    for (std::size_t i = 0; i < ps[t]->size(); ++i) ps[t]->data()[i] -= lr * gs[t]->data()[i];
  }
}

RealMatrix one_hot(std::span<const int> labels, std::size_t classes) {
  RealMatrix y(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(labels[i] >= 0 && static_cast<std::size_t>(labels[i]) < classes,
            ErrorKind::kInvalidArgument, "label out of range");
    y(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return y;
}

std::vector<int> argmax_rows(const RealMatrix& logits) {
  std::vector<int> out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < logits.cols(); ++j)
      if (logits(i, j) > logits(i, best)) best = j;
    out[i] = static_cast<int>(best);
  }
  return out;
}

void Dataset::validate() const {
  require(x.rows() == labels.size(), ErrorKind::kShapeMismatch,
          "feature rows and labels differ in count");
  require(!labels.empty(), ErrorKind::kInvalidArgument, "empty dataset");
  for (int l : labels)
    require(l >= 0 && static_cast<std::size_t>(l) < kClasses, ErrorKind::kInvalidArgument,
            "label out of range");
}

void TrainConfig::validate() const {
  require(epochs >= 1, ErrorKind::kInvalidArgument, "epochs must be >= 1");
  require(lr > 0.0 && std::isfinite(lr), ErrorKind::kInvalidArgument,
          "learning rate must be positive");
  require(alpha > 0.0 && alpha < 1.0, ErrorKind::kInvalidArgument,
          "leak coefficient must lie in (0, 1)");
  require(mpc.parties >= 2, ErrorKind::kInvalidArgument, "need at least two parties");
}

RealMatrix predict_logits(const ModelParams& p, const RealMatrix& x, double alpha) {
  return forward(p, x, alpha).logits;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> batches(std::size_t n, std::size_t size) {
  if (size == 0 || size >= n) return {{0, n}};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t b = 0; b < n; b += size) out.emplace_back(b, std::min(n, b + size));
  return out;
}

RealMatrix rows_of(const RealMatrix& m, std::size_t begin, std::size_t end) {
  RealMatrix out(end - begin, m.cols());
  std::copy(m.data().begin() + static_cast<std::ptrdiff_t>(begin * m.cols()),
            m.data().begin() + static_cast<std::ptrdiff_t>(end * m.cols()), out.data().begin());
  return out;
}

TrainResult train_plain(const Dataset& data, const TrainConfig& cfg) {
  TrainResult r;
  r.mode = Mode::kPlain;
  r.params = init_params(data.x.cols(), cfg.seed);
  const auto y = data.targets();
  const auto plan = batches(data.size(), cfg.batch_size);
  const auto total = static_cast<double>(y.size());
  for (std::size_t e = 0; e < cfg.epochs; ++e) {
    double sse = 0.0;
    for (const auto& [b0, b1] : plan) {
      const auto xb = rows_of(data.x, b0, b1);
      const auto yb = rows_of(y, b0, b1);
      const auto f = forward(r.params, xb, cfg.alpha);
      sse += mse_loss(f.logits, yb) * static_cast<double>(yb.size());
      sgd_step(r.params, backward(r.params, f.cache, f.logits, yb), cfg.lr);
    }
    r.loss_curve.push_back(sse / total);
  }
  return r;
}

TrainResult train_mpc(const Dataset& data, const TrainConfig& cfg) {
  const std::size_t n = cfg.mpc.parties;
  const std::size_t rows = data.size(), d = data.x.cols();
  const auto init = init_params(d, cfg.seed);
  const auto y = data.targets();
  const auto plan = batches(rows, cfg.batch_size);

  std::vector<SharedParams> slots(n);
  runtime::Program program;
  program.name = "train:" + std::to_string(d) + ":" + std::to_string(rows) + ":" +
                 std::to_string(cfg.epochs);
  program.body = [&](mpc::Context& ctx) -> std::vector<RealMatrix> {
    const bool owner = ctx.is_local(0);
    auto xs = mpc::share(ctx, 0, owner ? &data.x : nullptr, {rows, d});
    auto ys = mpc::share(ctx, 0, owner ? &y : nullptr, {rows, kClasses});
    auto params = share_params(ctx, 0, owner ? &init : nullptr, d);
    RealMatrix losses(1, cfg.epochs);
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
      mpc::SharedTensor sse;
      for (const auto& [b0, b1] : plan) {
        const auto xb = plan.size() == 1 ? xs : mpc::slice_rows(xs, b0, b1);
        const auto yb = plan.size() == 1 ? ys : mpc::slice_rows(ys, b0, b1);
        const auto f = forward(ctx, params, xb, cfg.alpha);
        const auto err = squared_error(ctx, f.logits, yb);
        sse = sse.size() == 0 ? err : mpc::add(sse, err);
        const auto g = backward(ctx, params, f, yb);
        sgd_step(ctx, params, g, cfg.lr);
      }
      losses(0, e) = mpc::open(ctx, sse)(0, 0) / static_cast<double>(rows * kClasses);
    }
    const int self = ctx.local_parties()[0];
    slots[static_cast<std::size_t>(self)] = params;
    return {losses};
  };

  runtime::SessionConfig sc;
  sc.parties = n;
  sc.seed = derive_seed(cfg.seed, 0x7a11);
  sc.fixed_point = mpc::FixedPointConfig(cfg.mpc.precision);
  sc.transport = cfg.mpc.transport;
  auto session = runtime::run_session(sc, program);

  TrainResult r;
  r.mode = Mode::kMpc;
  r.shares = merge_planes(slots);
  const auto& losses = session.parties[0].outputs.at(0);
  r.loss_curve.assign(losses.data().begin(), losses.data().end());
  r.transcript = session.parties[0].transcript.to_json();
  r.params = ModelParams{};
  return r;
}

}  // namespace

TrainResult train(const Dataset& data, const TrainConfig& cfg) {
  data.validate();
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  auto r = cfg.mode == Mode::kPlain ? train_plain(data, cfg) : train_mpc(data, cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace gestmpc::model
