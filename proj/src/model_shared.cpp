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

#include "gestmpc/error.hpp"
#include "gestmpc/model.hpp"

namespace gestmpc::model {

using mpc::SharedTensor;

SharedParams party_slice(const SharedParams& p, int party) {
  SharedParams out;
  auto dst = out.tensors();
  const auto src = p.tensors();
  for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = mpc::party_slice(*src[i], party);
  return out;
}

SharedParams merge_planes(const std::vector<SharedParams>& slices) {
  require(!slices.empty(), ErrorKind::kInvalidArgument, "nothing to merge");
  SharedParams out;
  auto dst = out.tensors();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    std::vector<SharedTensor> parts;
    for (const auto& s : slices) parts.push_back(*s.tensors()[i]);
    *dst[i] = mpc::merge_planes(parts);
  }
  return out;
}

ModelParams reconstruct(const SharedParams& merged) {
  ModelParams out;
  auto dst = out.tensors();
  const auto src = merged.tensors();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const auto ring = sharing::reconstruct_planes(src[i]->planes());
    RealMatrix m(src[i]->rows(), src[i]->cols());
    for (std::size_t k = 0; k < ring.size(); ++k)
      m.data()[k] = fixed::decode_bits(ring[k], src[i]->scale());
    *dst[i] = std::move(m);
  }
  return out;
}

SharedParams share_params(mpc::Context& ctx, int owner, const ModelParams* p,
                          std::size_t d_in) {
  const ModelParams shapes = [&] {
    ModelParams s;
    s.w1 = RealMatrix(d_in, kHidden1);
    s.b1 = RealMatrix(1, kHidden1);
    s.w2 = RealMatrix(kHidden1, kHidden2);
    s.b2 = RealMatrix(1, kHidden2);
    s.w3 = RealMatrix(kHidden2, kClasses);
    s.b3 = RealMatrix(1, kClasses);
    return s;
  }();
  const bool mine = ctx.is_local(owner);
  if (mine) {
    require(p != nullptr && p->d_in() == d_in, ErrorKind::kInvalidArgument,
            "the owner must supply parameters of the declared shape");
  }
  SharedParams out;
  auto dst = out.tensors();
  const auto shape_src = shapes.tensors();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const RealMatrix* value = mine ? p->tensors()[i] : nullptr;
    *dst[i] = mpc::share(ctx, owner, value, {shape_src[i]->rows(), shape_src[i]->cols()});
  }
  return out;
}

SharedForward forward(mpc::Context& ctx, const SharedParams& p, const SharedTensor& x,
                      double alpha) {
  require(x.cols() == p.d_in(), ErrorKind::kShapeMismatch,
          "input has " + std::to_string(x.cols()) + " features, model expects " +
              std::to_string(p.d_in()));
  mpc::Transcript::Scope scope(ctx.transcript(), "forward");
  SharedForward f;
  f.x = x;
  auto l1 = mpc::leaky_relu(ctx, mpc::add_row(mpc::matmul(ctx, x, p.w1), p.b1), alpha);
  f.a1 = std::move(l1.activation);
  f.m1 = std::move(l1.grad_mask);
  auto l2 = mpc::leaky_relu(ctx, mpc::add_row(mpc::matmul(ctx, f.a1, p.w2), p.b2), alpha);
  f.a2 = std::move(l2.activation);
  f.m2 = std::move(l2.grad_mask);
  f.logits = mpc::add_row(mpc::matmul(ctx, f.a2, p.w3), p.b3);
  return f;
}

SharedTensor squared_error(mpc::Context& ctx, const SharedTensor& o, const SharedTensor& y) {
  mpc::Transcript::Scope scope(ctx.transcript(), "loss");
  const auto d = mpc::sub(o, y);
  // Inner product of the flattened residual, truncated once.
  return mpc::matmul(ctx, mpc::reshape(d, {1, d.size()}), mpc::reshape(d, {d.size(), 1}));
}

SharedTensor mse_loss(mpc::Context& ctx, const SharedTensor& o, const SharedTensor& y) {
  return mpc::div_public(ctx, squared_error(ctx, o, y), o.size());
}

SharedParams backward(mpc::Context& ctx, const SharedParams& p, const SharedForward& f,
                      const SharedTensor& y) {
  require(f.logits.shape() == y.shape(), ErrorKind::kShapeMismatch,
          "backward: targets do not match the logits");
  mpc::Transcript::Scope scope(ctx.transcript(), "backward");
  const std::size_t n = y.rows();
  // G = 2 (O - Y) / N
  auto g = mpc::div_public(ctx, mpc::scale_int(mpc::sub(f.logits, y), 2), n);
  SharedParams grad;
  grad.w3 = mpc::matmul(ctx, mpc::transpose(f.a2), g);
  grad.b3 = mpc::sum(g, 0);
  g = mpc::mul(ctx, mpc::matmul(ctx, g, mpc::transpose(p.w3)), f.m2);
  grad.w2 = mpc::matmul(ctx, mpc::transpose(f.a1), g);
  grad.b2 = mpc::sum(g, 0);
  g = mpc::mul(ctx, mpc::matmul(ctx, g, mpc::transpose(p.w2)), f.m1);
  grad.w1 = mpc::matmul(ctx, mpc::transpose(f.x), g);
  grad.b1 = mpc::sum(g, 0);
  return grad;
}

void sgd_step(mpc::Context& ctx, SharedParams& p, const SharedParams& g, double lr) {
  mpc::Transcript::Scope scope(ctx.transcript(), "sgd_step");
  auto ps = p.tensors();
  const auto gs = g.tensors();
  for (std::size_t i = 0; i < ps.size(); ++i)
    *ps[i] = mpc::sub(*ps[i], mpc::scale_by_public(ctx, *gs[i], lr));
}

ModelParams open_params(mpc::Context& ctx, const SharedParams& p) {
  ModelParams out;
  auto dst = out.tensors();
  const auto src = p.tensors();
  for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = mpc::open(ctx, *src[i]);
  return out;
}

SharedInference predict_logits(const SharedParams& shares, const RealMatrix& x, double alpha,
                               const MpcConfig& cfg, std::uint64_t seed) {
  require(x.rows() > 0, ErrorKind::kInvalidArgument, "nothing to predict");
  require(shares.w1.parties().size() == cfg.parties, ErrorKind::kInvalidArgument,
          "shares were produced for a different party count");
  SharedInference out;
  runtime::Program program;
  program.name = "predict:" + std::to_string(x.rows()) + ":" + std::to_string(x.cols());
  program.body = [&](mpc::Context& ctx) -> std::vector<RealMatrix> {
    const int self = ctx.local_parties()[0];
    const auto mine = party_slice(shares, self);
    const auto start = std::chrono::steady_clock::now();
    const auto xs = mpc::share(ctx, 0, self == 0 ? &x : nullptr, {x.rows(), x.cols()});
    const auto f = forward(ctx, mine, xs, alpha);
    auto logits = mpc::reveal(ctx, f.logits, 0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!logits) return {};
    return {*logits, RealMatrix(1, 1, secs)};
  };
  runtime::SessionConfig sc;
  sc.parties = cfg.parties;
  sc.seed = seed;
  sc.fixed_point = mpc::FixedPointConfig(cfg.precision);
  sc.transport = cfg.transport;
  auto session = runtime::run_session(sc, program);
  const auto& outputs = session.parties[0].outputs;
  out.logits = outputs.at(0);
  out.seconds = outputs.at(1)(0, 0);
  out.transcript = session.parties[0].transcript.to_json();
  return out;
}

}  // namespace gestmpc::model
