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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestmpc/matrix.hpp"
#include "gestmpc/mpc/tensor.hpp"
#include "gestmpc/runtime/session.hpp"

// Three-layer classifier d_in -> 250 -> 80 -> 4 with Leaky ReLU, trained by
// full-batch gradient descent on the mean squared error to one-hot targets.
namespace gestmpc::model {

inline constexpr std::size_t kHidden1 = 250;
inline constexpr std::size_t kHidden2 = 80;
inline constexpr std::size_t kClasses = 4;
inline const std::array<std::string, kClasses> kClassNames = {"A", "B", "C", "E"};

// Maps "A", "B", "C", "E" to 0..3; throws kInvalidArgument otherwise.
int class_index(const std::string& name);

struct ModelParams {
  RealMatrix w1, b1, w2, b2, w3, b3;  // biases are 1 x width

  std::size_t d_in() const { return w1.rows(); }
  std::vector<const RealMatrix*> tensors() const { return {&w1, &b1, &w2, &b2, &w3, &b3}; }
  std::vector<RealMatrix*> tensors() { return {&w1, &b1, &w2, &b2, &w3, &b3}; }
};

using Gradients = ModelParams;

// W ~ N(0, 1/fan_in), zero biases.
ModelParams init_params(std::size_t d_in, std::uint64_t seed);

struct ForwardCache {
  RealMatrix x, a1, m1, a2, m2;  // inputs, activations and slope masks {1, alpha}
};

struct ForwardResult {
  RealMatrix logits;
  ForwardCache cache;
};

ForwardResult forward(const ModelParams& p, const RealMatrix& x, double alpha);

// (1 / (N C)) sum (Y - O)^2.
double mse_loss(const RealMatrix& o, const RealMatrix& y);

// Gradients of C times the loss (the 1/C factor lives in the learning rate):
// G = (2/N)(O - Y) at the output, dW = A^T G, db = column sums of G, and
// G <- (G W^T) * mask between layers.
Gradients backward(const ModelParams& p, const ForwardCache& cache, const RealMatrix& o,
                   const RealMatrix& y);

void sgd_step(ModelParams& p, const Gradients& g, double lr);

RealMatrix one_hot(std::span<const int> labels, std::size_t classes = kClasses);
std::vector<int> argmax_rows(const RealMatrix& logits);

struct Dataset {
  RealMatrix x;
  std::vector<int> labels;
  std::string split = "train";

  std::size_t size() const { return labels.size(); }
  RealMatrix targets() const { return one_hot(labels); }
  void validate() const;
};

enum class Mode { kPlain, kMpc };
std::string_view to_string(Mode m);
Mode parse_mode(const std::string& s);

struct MpcConfig {
  std::size_t parties = 2;
  int precision = 16;
  runtime::TransportKind transport = runtime::TransportKind::kInProcess;
};

struct TrainConfig {
  std::size_t epochs = 500;
  double lr = 0.1;
  double alpha = 0.01;
  std::size_t batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 1;
  Mode mode = Mode::kPlain;
  MpcConfig mpc;

  void validate() const;
};

// Shared parameters; in a session each party holds one plane, the merged
// form (all planes) is what checkpoints store.
struct SharedParams {
  mpc::SharedTensor w1, b1, w2, b2, w3, b3;

  std::vector<const mpc::SharedTensor*> tensors() const {
    return {&w1, &b1, &w2, &b2, &w3, &b3};
  }
  std::vector<mpc::SharedTensor*> tensors() { return {&w1, &b1, &w2, &b2, &w3, &b3}; }
  std::size_t d_in() const { return w1.rows(); }
};

SharedParams party_slice(const SharedParams& p, int party);
SharedParams merge_planes(const std::vector<SharedParams>& slices);
// Reconstructs merged shares locally (all planes must be present).
ModelParams reconstruct(const SharedParams& merged);

struct TrainResult {
  Mode mode = Mode::kPlain;
  ModelParams params;                 // plain mode
  std::optional<SharedParams> shares;  // mpc mode, all planes
  std::vector<double> loss_curve;     // loss before each epoch's updates
  double seconds = 0.0;
  nlohmann::json transcript;  // party 0 accounting (mpc mode)
};

// Plain or shared training according to cfg.mode. In shared mode the data
// owner (party 0) shares features, targets and the initial parameters; only
// the per-epoch loss is ever opened.
TrainResult train(const Dataset& data, const TrainConfig& cfg);

// --- shared-mode building blocks ----------------------------------------------

SharedParams share_params(mpc::Context& ctx, int owner, const ModelParams* p,
                          std::size_t d_in);

struct SharedForward {
  mpc::SharedTensor logits;
  mpc::SharedTensor x, a1, m1, a2, m2;
};

SharedForward forward(mpc::Context& ctx, const SharedParams& p, const mpc::SharedTensor& x,
                      double alpha);
// Shared sum of squared errors (1 x 1, fixed point).
mpc::SharedTensor squared_error(mpc::Context& ctx, const mpc::SharedTensor& o,
                                const mpc::SharedTensor& y);
mpc::SharedTensor mse_loss(mpc::Context& ctx, const mpc::SharedTensor& o,
                           const mpc::SharedTensor& y);
SharedParams backward(mpc::Context& ctx, const SharedParams& p, const SharedForward& f,
                      const mpc::SharedTensor& y);
void sgd_step(mpc::Context& ctx, SharedParams& p, const SharedParams& g, double lr);
ModelParams open_params(mpc::Context& ctx, const SharedParams& p);

// --- inference ---------------------------------------------------------------

RealMatrix predict_logits(const ModelParams& p, const RealMatrix& x, double alpha);

struct SharedInference {
  RealMatrix logits;       // revealed to party 0
  double seconds = 0.0;    // forward pass plus reveal, measured at party 0
  nlohmann::json transcript;
};

// Runs a session in which party 0 shares `x`, every party evaluates the
// network on its plane of `shares`, and the logits are revealed to party 0.
SharedInference predict_logits(const SharedParams& shares, const RealMatrix& x,
                               double alpha, const MpcConfig& cfg, std::uint64_t seed);

}  // namespace gestmpc::model
