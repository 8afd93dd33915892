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

#include "gestmpc/timing.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "gestmpc/error.hpp"
#include "gestmpc/random.hpp"

namespace gestmpc::timing {
namespace {

RealMatrix take_rows(const RealMatrix& x, std::size_t n) {
  RealMatrix out(n, x.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = x.row(i % x.rows());
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const BenchRow* find(const std::vector<BenchRow>& rows, model::Mode m) {
  for (const auto& r : rows)
    if (r.mode == m) return &r;
  return nullptr;
}

}  // namespace

std::vector<BenchRow> run(const BenchSpec& spec, const model::Dataset& train,
                          const RealMatrix& test) {
  require(spec.single_batch >= 1 && spec.batch >= 1 && spec.repeats >= 1,
          ErrorKind::kInvalidArgument, "batch sizes and repeats must be positive");
  require(test.rows() >= 1 && test.cols() == train.x.cols(), ErrorKind::kShapeMismatch,
          "benchmark inputs do not match the training width");
  std::vector<BenchRow> rows;
  for (model::Mode mode : spec.modes) {
    model::TrainConfig tc = spec.train;
    tc.mode = mode;
    const auto trained = model::train(train, tc);
    BenchRow row{mode, trained.seconds, 0.0, 0.0, 0.0, tc.epochs};

    auto time_batch = [&](std::size_t b) {
      const RealMatrix x = take_rows(test, b);
      std::vector<double> samples;
      for (std::size_t r = 0; r < spec.repeats; ++r) {
        if (mode == model::Mode::kPlain) {
          const auto t0 = std::chrono::steady_clock::now();
          const auto logits = model::predict_logits(trained.params, x, tc.alpha);
          const auto t1 = std::chrono::steady_clock::now();
          require(logits.rows() == b, ErrorKind::kProtocol, "unexpected logit count");
          samples.push_back(std::chrono::duration<double>(t1 - t0).count());
        } else {
          const auto inf = model::predict_logits(*trained.shares, x, tc.alpha, tc.mpc,
                                                 derive_seed(tc.seed, 0xbe9c + r));
          samples.push_back(inf.seconds);
        }
      }
      return 1e3 * median(samples);
    };
    row.latency_ms = time_batch(spec.single_batch);
    row.batch_latency_ms = time_batch(spec.batch);
    row.avg_inference_ms = row.batch_latency_ms / static_cast<double>(spec.batch);
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "mode,epochs,Train (s),Lat. (ms),Batch Lat. (ms),Avg. Inf. (ms)\n";
  for (const auto& r : rows)
    os << model::to_string(r.mode) << ',' << r.epochs << ',' << fmt(r.train_s, "%.6f") << ','
       << fmt(r.latency_ms, "%.6f") << ',' << fmt(r.batch_latency_ms, "%.6f") << ','
       << fmt(r.avg_inference_ms, "%.6f") << '\n';
}

void write_table(std::ostream& os, const std::vector<BenchRow>& rows, const BenchSpec& spec) {
  char line[160];
  std::snprintf(line, sizeof line, "%-6s %12s %12s %18s %15s\n", "Mode", "Train (s)",
                "Lat. (ms)", "Batch Lat. (ms)", "Avg. Inf. (ms)");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6s %12.3f %12.3f %18.3f %15.3f\n",
                  std::string(model::to_string(r.mode)).c_str(), r.train_s, r.latency_ms,
                  r.batch_latency_ms, r.avg_inference_ms);
    os << line;
  }
  os << "latency at batch " << spec.single_batch << ", batch latency at batch " << spec.batch
     << '\n';
}

BenchChecks check(const std::vector<BenchRow>& rows, const BenchSpec& spec) {
  const BenchRow* plain = find(rows, model::Mode::kPlain);
  const BenchRow* mpc = find(rows, model::Mode::kMpc);
  require(plain && mpc, ErrorKind::kInvalidArgument, "checks need plain and mpc rows");
  BenchChecks c;
  c.latency_ratio = mpc->latency_ms / plain->latency_ms;
  c.ratio_ok = c.latency_ratio >= 10.0;
  c.amortized =
      mpc->avg_inference_ms < mpc->latency_ms / static_cast<double>(spec.single_batch);
  return c;
}

}  // namespace gestmpc::timing
