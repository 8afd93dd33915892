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
#include <string>
#include <vector>

#include <json.hpp>

#include "gestmpc/matrix.hpp"
#include "gestmpc/segmentation.hpp"

namespace gestmpc::io {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);
// Creates parent directories. Throws kIo on failure.
void write_file(const std::string& path, const std::string& contents);

// Columns t,gx,gy,gz with optional ax,ay,az.
std::string trace_to_csv(const segmentation::Trace& trace);
segmentation::Trace trace_from_csv(const std::string& text);
void write_trace(const std::string& path, const segmentation::Trace& trace);
segmentation::Trace read_trace(const std::string& path);

// One row per performed symbol: user,session,position,symbol,trace.
struct LabelRow {
  std::size_t user = 0;
  std::size_t session = 0;
  std::size_t position = 0;
  std::string symbol;
  std::string trace;  // file name relative to the labels file
};

void write_labels(const std::string& path, const std::vector<LabelRow>& rows);
std::vector<LabelRow> read_labels(const std::string& path);

// A segmented window joined with its label (symbol empty when unknown).
struct WindowRecord {
  std::string trace;
  std::size_t user = 0;
  std::size_t session = 0;
  std::size_t position = 0;
  std::string symbol;
  std::size_t start = 0;
  std::size_t end = 0;
};

nlohmann::json to_json(const std::vector<WindowRecord>& windows);
std::vector<WindowRecord> windows_from_json(const nlohmann::json& j);

// Feature CSV: id,user,session,position,symbol,split followed by one column
// per feature.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::string> ids;
  std::vector<std::size_t> users, sessions, positions;
  std::vector<std::string> symbols;
  std::vector<std::string> splits;
  RealMatrix x;

  std::size_t size() const { return ids.size(); }
  // Rows whose split equals `split` (all rows when empty).
  FeatureTable select(const std::string& split) const;
};

std::string features_to_csv(const FeatureTable& t);
FeatureTable features_from_csv(const std::string& text);
void write_features(const std::string& path, const FeatureTable& t);
FeatureTable read_features(const std::string& path);

std::vector<std::string> split(const std::string& line, char sep);

}  // namespace gestmpc::io
