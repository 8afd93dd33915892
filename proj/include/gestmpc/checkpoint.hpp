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
#include <optional>
#include <string>
#include <vector>

#include "gestmpc/features.hpp"
#include "gestmpc/model.hpp"

namespace gestmpc::checkpoint {

// Binary layout, little-endian throughout: magic "GSTCKPT1", u32 version,
// u64 d_in, u32 precision, u8 mode (0 plain, 1 mpc), f64 leak, u32 party
// count, then six parameter records (u32 rows, u32 cols, then rows*cols f64
// in plain mode or, in mpc mode, u32 scale followed by one u64 plane per
// party), then the standardizer (u8 present, u64 dim, means, deviations)
// and the class names (u32 count, each u32 length + bytes).
struct Checkpoint {
  model::Mode mode = model::Mode::kPlain;
  int precision = 16;
  double alpha = 0.01;
  std::size_t parties = 0;
  model::ModelParams params;                 // plain mode
  std::optional<model::SharedParams> shares;  // mpc mode, all planes
  std::optional<features::StandardizationStats> standardizer;
  std::vector<std::string> class_names;

  std::size_t d_in() const;
};

std::vector<std::uint8_t> serialize(const Checkpoint& c);
Checkpoint deserialize(std::span<const std::uint8_t> data);

void save(const std::string& path, const Checkpoint& c);
Checkpoint load(const std::string& path);

}  // namespace gestmpc::checkpoint
