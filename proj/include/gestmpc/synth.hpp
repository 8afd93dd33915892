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
#include <string>
#include <vector>

#include "gestmpc/model.hpp"
#include "gestmpc/segmentation.hpp"

namespace gestmpc::synth {

// Isotropic Gaussian clusters, one per class, with centres drawn from N(0, 1)
// per coordinate.
struct BlobConfig {
  std::size_t classes = 4;
  std::size_t dim = 96;
  double sigma = 0.3;
  std::size_t train_per_class = 50;
  std::size_t test_size = 54;  // labels assigned round-robin
  std::uint64_t seed = 7;
};

struct BlobSet {
  model::Dataset train;
  model::Dataset test;
};

BlobSet make_blobs(const BlobConfig& cfg);

struct TraceConfig {
  std::vector<std::string> symbols = {"A", "B", "C", "E"};
  std::size_t users = 9;
  std::size_t reps = 15;
  std::uint64_t seed = 1;
  double sample_rate = 60.0;
  double noise = 0.02;            // rad/s
  double open_pause = 2.0;        // s
  double open_jitter = 0.2;
  double gap = 1.0;
  double gap_jitter = 0.15;
  double close_pause = 2.0;
  double fidget = 1.5;            // trailing motion after the closing pause
  double stroke = 0.9;            // nominal stroke length, s

  void validate() const;
};

struct Session {
  std::size_t user = 0;
  std::size_t rep = 0;
  std::vector<std::string> symbols;  // in performed order
  segmentation::Trace trace;
};

// One session per (user, rep): opening pause, every symbol once in a shuffled
// order separated by short pauses, closing pause, then idle fidgeting.
std::vector<Session> make_sessions(const TraceConfig& cfg);

// Noise-free stroke of one symbol, `samples` long, on the three gyro axes.
std::vector<std::array<double, 3>> stroke_template(const std::string& symbol,
                                                   std::size_t samples);

}  // namespace gestmpc::synth
