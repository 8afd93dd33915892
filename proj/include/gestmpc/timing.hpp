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
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gestmpc/model.hpp"

namespace gestmpc::timing {

struct BenchSpec {
  std::vector<model::Mode> modes{model::Mode::kPlain, model::Mode::kMpc};
  std::size_t single_batch = 1;
  std::size_t batch = 54;
  std::size_t repeats = 5;  // latency is the median over repeats
  model::TrainConfig train;  // mode is overridden per row
};

struct BenchRow {
  model::Mode mode = model::Mode::kPlain;
  double train_s = 0.0;
  double latency_ms = 0.0;        // one forward pass at single_batch
  double batch_latency_ms = 0.0;  // one forward pass at batch
  double avg_inference_ms = 0.0;  // batch_latency_ms / batch
  std::size_t epochs = 0;
};

// Trains each mode on `train` and times inference on the leading rows of
// `test` (rows are reused cyclically when the batch exceeds them).
std::vector<BenchRow> run(const BenchSpec& spec, const model::Dataset& train,
                          const RealMatrix& test);

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_table(std::ostream& os, const std::vector<BenchRow>& rows, const BenchSpec& spec);

struct BenchChecks {
  double latency_ratio = 0.0;  // mpc / plain at single_batch
  bool ratio_ok = false;       // ratio >= 10
  bool amortized = false;      // mpc per-sample cost at batch < at single_batch
};

// Requires both a plain and an mpc row.
BenchChecks check(const std::vector<BenchRow>& rows, const BenchSpec& spec);

}  // namespace gestmpc::timing
