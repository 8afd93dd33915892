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

#include "gestmpc/vocab.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gestmpc/error.hpp"
#include "gestmpc/kernels.hpp"
#include "gestmpc/random.hpp"

namespace gestmpc::vocab {

ClusterAssignment kmeans(const RealMatrix& points, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter) {
  const std::size_t n = points.rows(), dim = points.cols();
  require(k >= 1, ErrorKind::kInvalidArgument, "K must be positive");
  require(k <= n, ErrorKind::kInvalidArgument,
          "K = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");
  require(max_iter >= 1, ErrorKind::kInvalidArgument, "max_iter must be positive");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(points.row(a).begin(), points.row(a).end(),
                                        points.row(b).begin(), points.row(b).end());
  });
  RealMatrix sorted(n, dim);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(points.row(order[i]).begin(), points.row(order[i]).end(), sorted.row(i).begin());

  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < n; ++i)
    if (i == 0 || !std::equal(sorted.row(i).begin(), sorted.row(i).end(),
                              sorted.row(i - 1).begin()))
      distinct.push_back(i);

  Prng rng(seed);
  RealMatrix centroids(k, dim);
  // Partial Fisher-Yates over the distinct points.
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t src;
    if (c < distinct.size()) {
      const std::size_t j = c + static_cast<std::size_t>(rng.below(distinct.size() - c));
      std::swap(distinct[c], distinct[j]);
      src = distinct[c];
    } else {
      src = distinct[c % distinct.size()];
    }
    std::copy(sorted.row(src).begin(), sorted.row(src).end(), centroids.row(c).begin());
  }

  ClusterAssignment out;
  std::vector<std::size_t> assign(n, k), next(n);
  std::vector<double> dist(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    kernels::nearest_centroid_parallel(sorted.data(), centroids.data(), dim, next, dist);
    out.inertia_history.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));
    out.iterations = it + 1;
    if (next == assign) break;
    assign = next;

    RealMatrix sums(k, dim);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[assign[i]];
      for (std::size_t d = 0; d < dim; ++d) sums(assign[i], d) += sorted(i, d);
    }
    std::vector<bool> taken(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (std::size_t d = 0; d < dim; ++d)
          centroids(c, d) = sums(c, d) / static_cast<double>(counts[c]);
        continue;
      }
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!taken[i] && (far == n || dist[i] > dist[far])) far = i;
      taken[far] = true;
      std::copy(sorted.row(far).begin(), sorted.row(far).end(), centroids.row(c).begin());
    }
  }

  out.centroids = std::move(centroids);
  out.inertia = out.inertia_history.back();
  out.assignment.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) out.assignment[order[i]] = next[i];
  return out;
}

SeparabilityReport separability_report(std::span<const std::size_t> assignment,
                                       std::span<const std::string> labels) {
  require(!labels.empty(), ErrorKind::kInvalidArgument, "no labels to report on");
  require(labels.size() == assignment.size(), ErrorKind::kShapeMismatch,
          "labels and assignments differ in length");
  std::map<std::string, std::map<std::size_t, std::size_t>> counts;
  for (std::size_t i = 0; i < labels.size(); ++i) ++counts[labels[i]][assignment[i]];

  SeparabilityReport r;
  std::map<std::size_t, std::size_t> owners;
  for (const auto& [label, per_cluster] : counts) {
    SymbolSummary s;
    s.label = label;
    std::size_t best = 0;
    for (const auto& [cluster, c] : per_cluster) {
      s.count += c;
      if (c > best) {
        best = c;
        s.cluster = cluster;
      }
    }
    s.purity = static_cast<double>(best) / static_cast<double>(s.count);
    ++owners[s.cluster];
    r.symbols.push_back(s);
  }
  for (auto& s : r.symbols) {
    s.shared = owners[s.cluster] > 1;
    if (s.shared) r.separable = false;
  }
  return r;
}

}  // namespace gestmpc::vocab
