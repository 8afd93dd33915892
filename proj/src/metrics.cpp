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

#include "gestmpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "gestmpc/error.hpp"

namespace gestmpc::metrics {

RocCurve roc_curve(std::span<const double> scores, std::span<const int> positive) {
  require(scores.size() == positive.size(), ErrorKind::kShapeMismatch,
          "scores and targets differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t pos = 0, neg = 0;
  for (int p : positive) (p ? pos : neg)++;

  RocCurve c;
  c.fpr.push_back(0.0);
  c.tpr.push_back(0.0);
  c.thresholds.push_back(std::numeric_limits<double>::infinity());
  std::size_t tp = 0, fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i, dtp = 0, dfp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (positive[order[j]] ? dtp : dfp)++;
      ++j;
    }
    // Trapezoid over a tie block counts each positive-negative tie as 1/2.
    area += static_cast<double>(dfp) * (static_cast<double>(tp) + 0.5 * static_cast<double>(dtp));
    tp += dtp;
    fp += dfp;
    c.fpr.push_back(neg ? static_cast<double>(fp) / static_cast<double>(neg) : 0.0);
    c.tpr.push_back(pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0);
    c.thresholds.push_back(scores[order[i]]);
    i = j;
  }
  c.auc = pos && neg ? area / (static_cast<double>(pos) * static_cast<double>(neg))
                     : std::numeric_limits<double>::quiet_NaN();
  return c;
}

EvalReport evaluate(const RealMatrix& logits, std::span<const int> labels) {
  require(!labels.empty(), ErrorKind::kInvalidArgument, "empty test set");
  require(logits.rows() == labels.size(), ErrorKind::kShapeMismatch,
          "logits and labels differ in count");
  const std::size_t n = labels.size(), k = logits.cols();
  EvalReport r;
  r.samples = n;
  r.confusion = Matrix<std::size_t>(k, k, 0);

  std::vector<int> pred(n);
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    require(labels[i] >= 0 && static_cast<std::size_t>(labels[i]) < k,
            ErrorKind::kInvalidArgument, "label out of range");
    std::size_t best = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (logits(i, j) > logits(i, best)) best = j;
      const double target = static_cast<std::size_t>(labels[i]) == j ? 1.0 : 0.0;
      sse += (logits(i, j) - target) * (logits(i, j) - target);
    }
    pred[i] = static_cast<int>(best);
    ++r.confusion(static_cast<std::size_t>(labels[i]), best);
  }
  r.mse = sse / static_cast<double>(n * k);
  r.rmse = std::sqrt(r.mse);

  std::size_t correct = 0;
  for (std::size_t c = 0; c < k; ++c) correct += r.confusion(c, c);
  r.accuracy = static_cast<double>(correct) / static_cast<double>(n);

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t support = 0, predicted = 0;
    for (std::size_t j = 0; j < k; ++j) {
      support += r.confusion(c, j);
      predicted += r.confusion(j, c);
    }
    const double tp = static_cast<double>(r.confusion(c, c));
    const double p = predicted ? tp / static_cast<double>(predicted) : 0.0;
    const double rc = support ? tp / static_cast<double>(support) : 0.0;
    const double f = p + rc > 0.0 ? 2.0 * p * rc / (p + rc) : 0.0;
    const double w = static_cast<double>(support) / static_cast<double>(n);
    r.precision += w * p;
    r.recall += w * rc;
    r.f1 += w * f;
  }

  std::vector<double> all_scores;
  std::vector<int> all_pos;
  double macro = 0.0;
  std::size_t defined = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> s(n);
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = logits(i, c);
      p[i] = static_cast<std::size_t>(labels[i]) == c ? 1 : 0;
    }
    all_scores.insert(all_scores.end(), s.begin(), s.end());
    all_pos.insert(all_pos.end(), p.begin(), p.end());
    r.roc.push_back(roc_curve(s, p));
    r.auc.push_back(r.roc.back().auc);
    if (!std::isnan(r.auc.back())) {
      macro += r.auc.back();
      ++defined;
    }
  }
  r.macro_auc = defined ? macro / static_cast<double>(defined)
                        : std::numeric_limits<double>::quiet_NaN();
  r.micro_roc = roc_curve(all_scores, all_pos);
  r.micro_auc = r.micro_roc.auc;
  return r;
}

namespace {

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const EvalReport& r, std::span<const std::string> class_names) {
  nlohmann::json confusion = nlohmann::json::array();
  for (std::size_t i = 0; i < r.confusion.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < r.confusion.cols(); ++j) row.push_back(r.confusion(i, j));
    confusion.push_back(row);
  }
  nlohmann::json auc = nlohmann::json::object();
  for (std::size_t c = 0; c < r.auc.size(); ++c)
    auc[c < class_names.size() ? class_names[c] : std::to_string(c)] = number(r.auc[c]);
  return {{"samples", r.samples},
          {"accuracy", r.accuracy},
          {"precision_weighted", r.precision},
          {"recall_weighted", r.recall},
          {"f1_weighted", r.f1},
          {"mse", r.mse},
          {"rmse", r.rmse},
          {"confusion", confusion},
          {"auc", auc},
          {"auc_micro", number(r.micro_auc)},
          {"auc_macro", number(r.macro_auc)},
          {"classes", std::vector<std::string>(class_names.begin(), class_names.end())}};
}

void write_roc_csv(std::ostream& os, const EvalReport& r,
                   std::span<const std::string> class_names) {
  os << "curve,fpr,tpr,threshold\n";
  auto emit = [&](const std::string& name, const RocCurve& c) {
    for (std::size_t i = 0; i < c.fpr.size(); ++i)
      os << name << ',' << c.fpr[i] << ',' << c.tpr[i] << ',' << c.thresholds[i] << '\n';
  };
  for (std::size_t c = 0; c < r.roc.size(); ++c)
    emit(c < class_names.size() ? class_names[c] : std::to_string(c), r.roc[c]);
  emit("micro", r.micro_roc);
}

}  // namespace gestmpc::metrics
