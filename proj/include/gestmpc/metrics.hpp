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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestmpc/matrix.hpp"

namespace gestmpc::metrics {

struct RocCurve {
  std::vector<double> fpr;
  std::vector<double> tpr;
  std::vector<double> thresholds;
  double auc = 0.0;
};

// One-vs-rest ROC from scores and binary targets. Tied scores form one
// step; the AUC equals the rank statistic with ties counted as 1/2. The AUC
// is NaN when either class is absent.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> positive);

struct EvalReport {
  std::size_t samples = 0;
  double accuracy = 0.0;
  double precision = 0.0;  // support-weighted
  double recall = 0.0;
  double f1 = 0.0;
  double mse = 0.0;  // logits against one-hot targets
  double rmse = 0.0;
  Matrix<std::size_t> confusion;  // rows true class, columns predicted
  std::vector<double> auc;        // per class
  double micro_auc = 0.0;
  double macro_auc = 0.0;
  std::vector<RocCurve> roc;
  RocCurve micro_roc;
};

// Throws kInvalidArgument on an empty test set.
EvalReport evaluate(const RealMatrix& logits, std::span<const int> labels);

nlohmann::json to_json(const EvalReport& r, std::span<const std::string> class_names);

// Columns: curve,fpr,tpr,threshold with curve one of the class names, "micro".
void write_roc_csv(std::ostream& os, const EvalReport& r,
                   std::span<const std::string> class_names);

}  // namespace gestmpc::metrics
