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

#include "gestmpc/config.hpp"

#include <cstdio>

#include "gestmpc/error.hpp"
#include "gestmpc/hash.hpp"
#include "gestmpc/trace_io.hpp"

namespace gestmpc::config {
namespace {

using nlohmann::json;

void check_keys(const json& defaults, const json& given, const std::string& path) {
  require(given.is_object(), ErrorKind::kInvalidArgument, "config " + path + " must be an object");
  for (const auto& [key, value] : given.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    require(defaults.contains(key), ErrorKind::kInvalidArgument, "unknown config key " + where);
    if (defaults[key].is_object()) check_keys(defaults[key], value, where);
  }
}

runtime::TransportKind parse_transport(const std::string& s) {
  if (s == "inproc") return runtime::TransportKind::kInProcess;
  if (s == "tcp") return runtime::TransportKind::kTcp;
  fail(ErrorKind::kInvalidArgument, "transport must be inproc or tcp");
}

}  // namespace

json to_json(const AppConfig& c) {
  const auto& d = c.data;
  const auto& p = c.segmentation;
  const auto& f = c.features;
  const auto& t = c.train;
  const auto& h = c.haptic;
  return {
      {"seed", c.seed},
      {"data",
       {{"symbols", d.symbols},
        {"users", d.users},
        {"reps", d.reps},
        {"sample_rate", d.sample_rate},
        {"noise", d.noise},
        {"open_pause", d.open_pause},
        {"open_jitter", d.open_jitter},
        {"gap", d.gap},
        {"gap_jitter", d.gap_jitter},
        {"close_pause", d.close_pause},
        {"fidget", d.fidget},
        {"stroke", d.stroke}}},
      {"segmentation",
       {{"threshold", p.threshold},
        {"open_duration", p.open_duration},
        {"close_duration", p.close_duration},
        {"tolerance", p.tolerance},
        {"min_gap", p.min_gap},
        {"min_motion_samples", p.min_motion_samples}}},
      {"features",
       {{"quantiles", f.quantiles},
        {"lags", f.lags},
        {"entropy_m", f.entropy_m},
        {"entropy_r", f.entropy_r},
        {"rolloff", f.rolloff},
        {"sample_rate", f.sample_rate},
        {"fft_length", f.fft_length},
        {"test_fraction", c.test_fraction}}},
      {"cluster",
       {{"k", c.cluster.k}, {"max_iter", c.cluster.max_iter}, {"group_by", c.cluster.group_by}}},
      {"train",
       {{"epochs", t.epochs},
        {"lr", t.lr},
        {"alpha", t.alpha},
        {"batch_size", t.batch_size},
        {"mode", std::string(model::to_string(t.mode))},
        {"parties", t.mpc.parties},
        {"precision", t.mpc.precision},
        {"transport", t.mpc.transport == runtime::TransportKind::kTcp ? "tcp" : "inproc"}}},
      {"bench",
       {{"batches", c.bench.batches},
        {"repeats", c.bench.repeats},
        {"train_epochs", c.bench.train_epochs}}},
      {"haptic",
       {{"t1_ms", h.t1_ms},
        {"t2_ms", h.t2_ms},
        {"t3_ms", h.t3_ms},
        {"amplitude", h.amplitude},
        {"pulse_counts", h.pulse_counts},
        {"observation_radius_m", h.observation_radius_m}}},
      {"lwe",
       {{"n", c.lwe.n},
        {"q", c.lwe.q},
        {"sigma_key", c.lwe.sigma_key},
        {"sigma_err", c.lwe.sigma_err},
        {"sigma_enc", c.lwe.sigma_enc}}},
  };
}

AppConfig from_json(const json& given) {
  AppConfig c;
  json j = to_json(c);
  check_keys(j, given, "");
  j.merge_patch(given);
  try {
    c.seed = j["seed"].get<std::uint64_t>();
    auto& d = c.data;
    const auto& jd = j["data"];
    d.symbols = jd["symbols"].get<std::vector<std::string>>();
    d.users = jd["users"].get<std::size_t>();
    d.reps = jd["reps"].get<std::size_t>();
    d.sample_rate = jd["sample_rate"].get<double>();
    d.noise = jd["noise"].get<double>();
    d.open_pause = jd["open_pause"].get<double>();
    d.open_jitter = jd["open_jitter"].get<double>();
    d.gap = jd["gap"].get<double>();
    d.gap_jitter = jd["gap_jitter"].get<double>();
    d.close_pause = jd["close_pause"].get<double>();
    d.fidget = jd["fidget"].get<double>();
    d.stroke = jd["stroke"].get<double>();

    auto& p = c.segmentation;
    const auto& jp = j["segmentation"];
    p.threshold = jp["threshold"].get<double>();
    p.open_duration = jp["open_duration"].get<double>();
    p.close_duration = jp["close_duration"].get<double>();
    p.tolerance = jp["tolerance"].get<double>();
    p.min_gap = jp["min_gap"].get<double>();
    p.min_motion_samples = jp["min_motion_samples"].get<std::size_t>();

    auto& f = c.features;
    const auto& jf = j["features"];
    f.quantiles = jf["quantiles"].get<std::vector<double>>();
    f.lags = jf["lags"].get<std::vector<std::size_t>>();
    f.entropy_m = jf["entropy_m"].get<std::size_t>();
    f.entropy_r = jf["entropy_r"].get<double>();
    f.rolloff = jf["rolloff"].get<double>();
    f.sample_rate = jf["sample_rate"].get<double>();
    f.fft_length = jf["fft_length"].get<std::size_t>();
    c.test_fraction = jf["test_fraction"].get<double>();

    c.cluster.k = j["cluster"]["k"].get<std::size_t>();
    c.cluster.max_iter = j["cluster"]["max_iter"].get<std::size_t>();
    c.cluster.group_by = j["cluster"]["group_by"].get<std::string>();

    auto& t = c.train;
    const auto& jt = j["train"];
    t.epochs = jt["epochs"].get<std::size_t>();
    t.lr = jt["lr"].get<double>();
    t.alpha = jt["alpha"].get<double>();
    t.batch_size = jt["batch_size"].get<std::size_t>();
    t.mode = model::parse_mode(jt["mode"].get<std::string>());
    t.mpc.parties = jt["parties"].get<std::size_t>();
    t.mpc.precision = jt["precision"].get<int>();
    t.mpc.transport = parse_transport(jt["transport"].get<std::string>());

    c.bench.batches = j["bench"]["batches"].get<std::vector<std::size_t>>();
    c.bench.repeats = j["bench"]["repeats"].get<std::size_t>();
    c.bench.train_epochs = j["bench"]["train_epochs"].get<std::size_t>();

    auto& h = c.haptic;
    const auto& jh = j["haptic"];
    h.t1_ms = jh["t1_ms"].get<double>();
    h.t2_ms = jh["t2_ms"].get<double>();
    h.t3_ms = jh["t3_ms"].get<double>();
    h.amplitude = jh["amplitude"].get<int>();
    h.pulse_counts = jh["pulse_counts"].get<std::array<int, 4>>();
    h.observation_radius_m = jh["observation_radius_m"].get<double>();

    const auto& jl = j["lwe"];
    c.lwe.n = jl["n"].get<std::size_t>();
    c.lwe.q = jl["q"].get<std::uint32_t>();
    c.lwe.sigma_key = jl["sigma_key"].get<double>();
    c.lwe.sigma_err = jl["sigma_err"].get<double>();
    c.lwe.sigma_enc = jl["sigma_enc"].get<double>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("bad config value: ") + e.what());
  }
  require(c.test_fraction >= 0 && c.test_fraction < 1, ErrorKind::kInvalidArgument,
          "test_fraction must lie in [0, 1)");
  require(c.cluster.group_by.empty() || c.cluster.group_by == "user",
          ErrorKind::kInvalidArgument, "cluster.group_by must be empty or user");
  return c;
}

AppConfig load(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kFormat, "config " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

std::uint64_t hash(const AppConfig& c) { return fnv1a64(to_json(c).dump()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json to_json(const RunManifest& m) {
  json seeds = json::object();
  for (const auto& [k, v] : m.seeds) seeds[k] = v;
  json j = {{"subcommand", m.subcommand},
            {"config_hash", hex64(m.config_hash)},
            {"seeds", seeds},
            {"inputs", m.inputs},
            {"outputs", m.outputs},
            {"version", m.version}};
  if (!m.details.is_null()) j["details"] = m.details;
  return j;
}

void write_manifest(const std::string& artifact, const RunManifest& m) {
  io::write_file(artifact + ".manifest.json", to_json(m).dump(2) + "\n");
}

}  // namespace gestmpc::config
