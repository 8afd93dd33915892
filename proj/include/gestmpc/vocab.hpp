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
#include <span>
#include <string>
#include <vector>

#include "gestmpc/matrix.hpp"

namespace gestmpc::vocab {

struct ClusterAssignment {
  RealMatrix centroids;                 // K x dim
  std::vector<std::size_t> assignment;  // per input point, in input order
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_history;  // after every assignment step
};

// Lloyd's algorithm on squared Euclidean distance. Points are processed in a
// canonical (lexicographic) order so the partition does not depend on input
// order. Initial centroids are K distinct points picked by the seed; a
// cluster that empties is re-seeded at the point farthest from its centroid.
// Throws kInvalidArgument when K is zero or exceeds the point count.
ClusterAssignment kmeans(const RealMatrix& points, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter = 300);

struct SymbolSummary {
  std::string label;
  std::size_t count = 0;
  std::size_t cluster = 0;  // majority cluster (lowest index on ties)
  double purity = 0.0;      // share of the symbol's points in that cluster
  bool shared = false;      // another symbol has the same majority cluster
};

struct SeparabilityReport {
  std::vector<SymbolSummary> symbols;  // sorted by label
  bool separable = true;               // no shared clusters
};

// Throws kInvalidArgument for an empty label set or mismatched lengths.
SeparabilityReport separability_report(std::span<const std::size_t> assignment,
                                       std::span<const std::string> labels);

}  // namespace gestmpc::vocab
