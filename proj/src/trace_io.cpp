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

#include "gestmpc/trace_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gestmpc/error.hpp"

namespace gestmpc::io {
namespace {

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  require(ec == std::errc() && p == end, ErrorKind::kFormat,
          "bad number '" + s + "' in " + what);
  return v;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  require(ec == std::errc() && p == end, ErrorKind::kFormat,
          "bad integer '" + s + "' in " + what);
  return v;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  require(ec == std::errc(), ErrorKind::kFormat, "cannot format number");
  return std::string(buf, p);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path);
  out << contents;
  require(static_cast<bool>(out), ErrorKind::kIo, "write failed for " + path);
}

std::string trace_to_csv(const segmentation::Trace& trace) {
  const bool accel = !trace.empty() && trace.front().has_accel;
  std::string out = accel ? "t,gx,gy,gz,ax,ay,az\n" : "t,gx,gy,gz\n";
  for (const auto& s : trace) {
    out += format_double(s.t) + ',' + format_double(s.gx) + ',' + format_double(s.gy) + ',' +
           format_double(s.gz);
    if (accel)
      out += ',' + format_double(s.ax) + ',' + format_double(s.ay) + ',' + format_double(s.az);
    out += '\n';
  }
  return out;
}

segmentation::Trace trace_from_csv(const std::string& text) {
  const auto rows = lines(text);
  require(!rows.empty(), ErrorKind::kFormat, "empty trace file");
  const auto header = split(rows[0], ',');
  const bool accel = header == std::vector<std::string>{"t", "gx", "gy", "gz", "ax", "ay", "az"};
  require(accel || header == std::vector<std::string>{"t", "gx", "gy", "gz"}, ErrorKind::kFormat,
          "trace header must be t,gx,gy,gz[,ax,ay,az]");
  segmentation::Trace trace;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    require(f.size() == header.size(), ErrorKind::kFormat,
            "trace row " + std::to_string(i) + " has the wrong column count");
    segmentation::MotionSample s;
    s.t = parse_double(f[0], "trace");
    s.gx = parse_double(f[1], "trace");
    s.gy = parse_double(f[2], "trace");
    s.gz = parse_double(f[3], "trace");
    if (accel) {
      s.has_accel = true;
      s.ax = parse_double(f[4], "trace");
      s.ay = parse_double(f[5], "trace");
      s.az = parse_double(f[6], "trace");
    }
    trace.push_back(s);
  }
  return trace;
}

void write_trace(const std::string& path, const segmentation::Trace& trace) {
  write_file(path, trace_to_csv(trace));
}

segmentation::Trace read_trace(const std::string& path) {
  return trace_from_csv(read_file(path));
}

void write_labels(const std::string& path, const std::vector<LabelRow>& rows) {
  std::string out = "user,session,position,symbol,trace\n";
  for (const auto& r : rows)
    out += std::to_string(r.user) + ',' + std::to_string(r.session) + ',' +
           std::to_string(r.position) + ',' + r.symbol + ',' + r.trace + '\n';
  write_file(path, out);
}

std::vector<LabelRow> read_labels(const std::string& path) {
  const auto rows = lines(read_file(path));
  require(!rows.empty() && rows[0] == "user,session,position,symbol,trace", ErrorKind::kFormat,
          "labels header must be user,session,position,symbol,trace");
  std::vector<LabelRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    require(f.size() == 5, ErrorKind::kFormat, "labels row has the wrong column count");
    out.push_back({parse_size(f[0], "labels"), parse_size(f[1], "labels"),
                   parse_size(f[2], "labels"), f[3], f[4]});
  }
  return out;
}

nlohmann::json to_json(const std::vector<WindowRecord>& windows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : windows)
    arr.push_back({{"trace", w.trace},
                   {"user", w.user},
                   {"session", w.session},
                   {"position", w.position},
                   {"symbol", w.symbol},
                   {"start", w.start},
                   {"end", w.end}});
  return {{"windows", arr}};
}

std::vector<WindowRecord> windows_from_json(const nlohmann::json& j) {
  std::vector<WindowRecord> out;
  try {
    for (const auto& w : j.at("windows"))
      out.push_back({w.at("trace").get<std::string>(), w.at("user").get<std::size_t>(),
                     w.at("session").get<std::size_t>(), w.at("position").get<std::size_t>(),
                     w.at("symbol").get<std::string>(), w.at("start").get<std::size_t>(),
                     w.at("end").get<std::size_t>()});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string("bad windows file: ") + e.what());
  }
  return out;
}

FeatureTable FeatureTable::select(const std::string& which) const {
  FeatureTable t;
  t.names = names;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (which.empty() || splits[i] == which) keep.push_back(i);
  t.x = RealMatrix(keep.size(), x.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const std::size_t i = keep[k];
    t.ids.push_back(ids[i]);
    t.users.push_back(users[i]);
    t.sessions.push_back(sessions[i]);
    t.positions.push_back(positions[i]);
    t.symbols.push_back(symbols[i]);
    t.splits.push_back(splits[i]);
    std::copy(x.row(i).begin(), x.row(i).end(), t.x.row(k).begin());
  }
  return t;
}

std::string features_to_csv(const FeatureTable& t) {
  require(t.names.size() == t.x.cols() && t.x.rows() == t.size(), ErrorKind::kShapeMismatch,
          "feature table is inconsistent");
  std::string out = "id,user,session,position,symbol,split";
  for (const auto& n : t.names) out += ',' + n;
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += t.ids[i] + ',' + std::to_string(t.users[i]) + ',' + std::to_string(t.sessions[i]) +
           ',' + std::to_string(t.positions[i]) + ',' + t.symbols[i] + ',' + t.splits[i];
    for (double v : t.x.row(i)) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

FeatureTable features_from_csv(const std::string& text) {
  const auto rows = lines(text);
  require(!rows.empty(), ErrorKind::kFormat, "empty feature file");
  const auto header = split(rows[0], ',');
  const std::vector<std::string> meta = {"id", "user", "session", "position", "symbol", "split"};
  require(header.size() > meta.size() && std::equal(meta.begin(), meta.end(), header.begin()),
          ErrorKind::kFormat, "feature header must start with id,user,session,position,symbol,split");
  FeatureTable t;
  t.names.assign(header.begin() + 6, header.end());
  t.x = RealMatrix(rows.size() - 1, t.names.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    require(f.size() == header.size(), ErrorKind::kFormat,
            "feature row " + std::to_string(i) + " has the wrong column count");
    t.ids.push_back(f[0]);
    t.users.push_back(parse_size(f[1], "features"));
    t.sessions.push_back(parse_size(f[2], "features"));
    t.positions.push_back(parse_size(f[3], "features"));
    t.symbols.push_back(f[4]);
    t.splits.push_back(f[5]);
    for (std::size_t j = 0; j < t.names.size(); ++j)
      t.x(i - 1, j) = parse_double(f[6 + j], "features");
  }
  return t;
}

void write_features(const std::string& path, const FeatureTable& t) {
  write_file(path, features_to_csv(t));
}

FeatureTable read_features(const std::string& path) { return features_from_csv(read_file(path)); }

}  // namespace gestmpc::io
