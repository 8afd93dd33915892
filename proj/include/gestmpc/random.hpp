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
#include <random>

namespace gestmpc {

// Deterministic generator used everywhere randomness matters. All derived
// quantities (uniform reals, Gaussians) are computed here rather than through
// <random> distributions, whose algorithms are implementation-defined.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound), rejection sampled.
  std::uint64_t below(std::uint64_t bound);

  // Standard normal via Box-Muller (one output per call).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Rounded Gaussian with standard deviation sigma.
  std::int64_t discrete_gaussian(double sigma);

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a stream identifier (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace gestmpc
