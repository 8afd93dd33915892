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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestmpc/features.hpp"
#include "gestmpc/feedback.hpp"
#include "gestmpc/lwe.hpp"
#include "gestmpc/model.hpp"
#include "gestmpc/segmentation.hpp"
#include "gestmpc/synth.hpp"

namespace gestmpc::config {

inline constexpr const char* kVersion = "0.1.0";

struct ClusterConfig {
  std::size_t k = 4;
  std::size_t max_iter = 300;
  std::string group_by;  // "" (pooled) or "user"
};

struct BenchConfig {
  std::vector<std::size_t> batches{1, 54};
  std::size_t repeats = 5;
  std::size_t train_epochs = 20;
};

// Every tunable in one place. Unknown keys in a config file are rejected.
struct AppConfig {
  std::uint64_t seed = 1;
  synth::TraceConfig data;
  segmentation::PauseConfig segmentation;
  features::FeatureConfig features;
  double test_fraction = 0.1;
  ClusterConfig cluster;
  model::TrainConfig train;
  BenchConfig bench;
  feedback::HapticPattern haptic;
  lwe::LweParams lwe;
};

nlohmann::json to_json(const AppConfig& c);
// Overlays `j` on the defaults. Throws kInvalidArgument on unknown keys or
// ill-typed values.
AppConfig from_json(const nlohmann::json& j);
AppConfig load(const std::string& path);
std::uint64_t hash(const AppConfig& c);

struct RunManifest {
  std::string subcommand;
  std::uint64_t config_hash = 0;
  std::map<std::string, std::uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string version = kVersion;
  nlohmann::json details;  // subcommand-specific, omitted when null
};

nlohmann::json to_json(const RunManifest& m);
// Writes `<artifact>.manifest.json`.
void write_manifest(const std::string& artifact, const RunManifest& m);

std::string hex64(std::uint64_t v);

}  // namespace gestmpc::config
