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

// gestmpc command-line tool. Every subcommand reads the shared JSON config
// (defaults when --config is absent), applies its flags on top and writes a
// `<artifact>.manifest.json` next to each artifact.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gestmpc/checkpoint.hpp"
#include "gestmpc/config.hpp"
#include "gestmpc/error.hpp"
#include "gestmpc/features.hpp"
#include "gestmpc/feedback.hpp"
#include "gestmpc/lwe.hpp"
#include "gestmpc/metrics.hpp"
#include "gestmpc/model.hpp"
#include "gestmpc/mpc/tensor.hpp"
#include "gestmpc/random.hpp"
#include "gestmpc/runtime/session.hpp"
#include "gestmpc/runtime/transport.hpp"
#include "gestmpc/segmentation.hpp"
#include "gestmpc/synth.hpp"
#include "gestmpc/timing.hpp"
#include "gestmpc/trace_io.hpp"
#include "gestmpc/vocab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gestmpc;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string config_path;
  bool print_config = false;
  std::optional<std::uint64_t> seed;
};

config::AppConfig load_config(const Globals& g) {
  auto cfg = g.config_path.empty() ? config::AppConfig{} : config::load(g.config_path);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : io::split(s, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

config::RunManifest manifest(const std::string& sub, const config::AppConfig& cfg) {
  config::RunManifest m;
  m.subcommand = sub;
  m.config_hash = config::hash(cfg);
  m.seeds["seed"] = cfg.seed;
  return m;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

model::Dataset to_dataset(const io::FeatureTable& t, const std::string& split) {
  model::Dataset d;
  d.x = t.x;
  d.split = split;
  for (const auto& s : t.symbols) d.labels.push_back(model::class_index(s));
  return d;
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
  std::string out = "data";
  std::optional<std::string> symbols;
  std::optional<std::size_t> reps, users;
};

int cmd_gen_data(const Globals& g, const GenDataArgs& a) {
  auto cfg = load_config(g);
  if (a.symbols) cfg.data.symbols = split_list(*a.symbols);
  if (a.reps) cfg.data.reps = *a.reps;
  if (a.users) cfg.data.users = *a.users;
  cfg.data.seed = cfg.seed;
  if (g.print_config) return emit(config::to_json(cfg)), 0;

  const auto sessions = synth::make_sessions(cfg.data);
  std::vector<io::LabelRow> labels;
  auto m = manifest("gen-data", cfg);
  for (const auto& s : sessions) {
    char name[64];
    std::snprintf(name, sizeof name, "traces/u%02zu_s%02zu.csv", s.user, s.rep);
    io::write_trace((fs::path(a.out) / name).string(), s.trace);
    m.outputs.push_back(name);
    for (std::size_t k = 0; k < s.symbols.size(); ++k)
      labels.push_back({s.user, s.rep, k, s.symbols[k], name});
  }
  const auto labels_path = (fs::path(a.out) / "labels.csv").string();
  io::write_labels(labels_path, labels);
  m.outputs.insert(m.outputs.begin(), "labels.csv");
  config::write_manifest(labels_path, m);
  emit({{"sessions", sessions.size()}, {"symbols", labels.size()}, {"labels", labels_path}});
  return 0;
}

// ---------------------------------------------------------------------------

struct SegmentArgs {
  std::string data = "data";
  std::string out = "windows.json";
  std::optional<double> threshold;
};

int cmd_segment(const Globals& g, const SegmentArgs& a) {
  auto cfg = load_config(g);
  if (a.threshold) cfg.segmentation.threshold = *a.threshold;
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  cfg.segmentation.validate();

  const auto labels = io::read_labels((fs::path(a.data) / "labels.csv").string());
  std::map<std::string, std::vector<io::LabelRow>> by_trace;
  for (const auto& r : labels) by_trace[r.trace].push_back(r);

  std::vector<io::WindowRecord> out;
  std::size_t mismatched = 0;
  for (auto& [trace_name, rows] : by_trace) {
    std::sort(rows.begin(), rows.end(),
              [](const auto& x, const auto& y) { return x.position < y.position; });
    const auto trace = io::read_trace((fs::path(a.data) / trace_name).string());
    const auto windows = segmentation::segment(trace, cfg.segmentation);
    const bool joined = windows.size() == rows.size();
    if (!joined) ++mismatched;
    for (std::size_t k = 0; k < windows.size(); ++k)
      out.push_back({trace_name, rows.front().user, rows.front().session, k,
                     joined ? rows[k].symbol : std::string(), windows[k].start_index,
                     windows[k].end_index});
  }
  io::write_file(a.out, io::to_json(out).dump(1) + "\n");
  auto m = manifest("segment", cfg);
  m.inputs = {a.data};
  m.outputs = {a.out};
  config::write_manifest(a.out, m);
  emit({{"traces", by_trace.size()},
        {"windows", out.size()},
        {"expected", labels.size()},
        {"mismatched_traces", mismatched}});
  return 0;
}

// ---------------------------------------------------------------------------

struct FeaturesArgs {
  std::string data = "data";
  std::string windows = "windows.json";
  std::string out = "features.csv";
  std::optional<double> test_fraction;
};

int cmd_features(const Globals& g, const FeaturesArgs& a) {
  auto cfg = load_config(g);
  if (a.test_fraction) cfg.test_fraction = *a.test_fraction;
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  cfg.features.validate();
  require(cfg.test_fraction >= 0 && cfg.test_fraction < 1, ErrorKind::kInvalidArgument,
          "test fraction must lie in [0, 1)");

  const auto records = io::windows_from_json(json::parse(io::read_file(a.windows)));
  std::map<std::string, segmentation::Trace> traces;
  std::vector<segmentation::GestureWindow> windows;
  for (const auto& r : records) {
    auto it = traces.find(r.trace);
    if (it == traces.end())
      it = traces.emplace(r.trace, io::read_trace((fs::path(a.data) / r.trace).string())).first;
    require(r.start < r.end && r.end <= it->second.size(), ErrorKind::kFormat,
            "window outside its trace " + r.trace);
    segmentation::GestureWindow w;
    w.start_index = r.start;
    w.end_index = r.end;
    w.samples.assign(it->second.begin() + static_cast<std::ptrdiff_t>(r.start),
                     it->second.begin() + static_cast<std::ptrdiff_t>(r.end));
    windows.push_back(std::move(w));
  }

  io::FeatureTable t;
  t.names = features::feature_names(cfg.features);
  t.x = features::extract_batch(windows, cfg.features);
  std::map<std::string, std::vector<std::size_t>> per_symbol;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    t.ids.push_back("u" + std::to_string(r.user) + "_s" + std::to_string(r.session) + "_p" +
                    std::to_string(r.position));
    t.users.push_back(r.user);
    t.sessions.push_back(r.session);
    t.positions.push_back(r.position);
    t.symbols.push_back(r.symbol);
    t.splits.push_back("train");
    per_symbol[r.symbol].push_back(i);
  }
  // Stratified, seeded hold-out.
  Prng rng(derive_seed(cfg.seed, 0x5b1));
  for (auto& [symbol, idx] : per_symbol) {
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
    const auto n_test = static_cast<std::size_t>(
        std::lround(cfg.test_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < n_test; ++k) t.splits[idx[k]] = "test";
  }
  io::write_features(a.out, t);
  auto m = manifest("features", cfg);
  m.seeds["split"] = derive_seed(cfg.seed, 0x5b1);
  m.inputs = {a.data, a.windows};
  m.outputs = {a.out};
  m.details = {{"feature_names", t.names}, {"features", config::to_json(cfg)["features"]}};
  config::write_manifest(a.out, m);
  emit({{"windows", t.size()},
        {"dimension", t.names.size()},
        {"test", std::count(t.splits.begin(), t.splits.end(), "test")}});
  return 0;
}

// ---------------------------------------------------------------------------

struct ClusterArgs {
  std::string features = "features.csv";
  std::string out = "clusters.csv";
  std::optional<std::size_t> k;
  std::optional<std::string> group_by;
};

int cmd_cluster(const Globals& g, const ClusterArgs& a) {
  auto cfg = load_config(g);
  if (a.k) cfg.cluster.k = *a.k;
  if (a.group_by) cfg.cluster.group_by = *a.group_by;
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  require(cfg.cluster.group_by.empty() || cfg.cluster.group_by == "user",
          ErrorKind::kInvalidArgument, "--group-by accepts only 'user'");

  const auto table = io::read_features(a.features);
  const auto x = features::fit_standardizer(table.x).apply(table.x);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.size(); ++i)
    groups[cfg.cluster.group_by.empty() ? "all" : "user" + std::to_string(table.users[i])]
        .push_back(i);

  std::set<std::string> symbols(table.symbols.begin(), table.symbols.end());
  std::string csv = "group,symbol,cluster,purity,shared,count\n";
  std::ostringstream console;
  console << "group";
  for (const auto& s : symbols) console << '\t' << s;
  console << "\tinertia\n";
  json summary = json::array();
  for (const auto& [name, idx] : groups) {
    RealMatrix pts(idx.size(), x.cols());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::copy(x.row(idx[k]).begin(), x.row(idx[k]).end(), pts.row(k).begin());
      labels.push_back(table.symbols[idx[k]]);
    }
    const auto ca = vocab::kmeans(pts, cfg.cluster.k, cfg.seed, cfg.cluster.max_iter);
    const auto rep = vocab::separability_report(ca.assignment, labels);
    console << name;
    for (const auto& s : rep.symbols) {
      csv += name + ',' + s.label + ',' + std::to_string(s.cluster) + ',' +
             io::format_double(s.purity) + ',' + (s.shared ? "1" : "0") + ',' +
             std::to_string(s.count) + '\n';
      console << '\t' << s.cluster << (s.shared ? "*" : "");
    }
    console << '\t' << ca.inertia << '\n';
    summary.push_back({{"group", name}, {"separable", rep.separable}, {"iterations", ca.iterations}});
  }
  io::write_file(a.out, csv);
  auto m = manifest("cluster", cfg);
  m.inputs = {a.features};
  m.outputs = {a.out};
  config::write_manifest(a.out, m);
  std::cerr << console.str() << "(* = shares its cluster with another symbol)\n";
  emit({{"groups", summary}});
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string features = "features.csv";
  std::string out_dir = "run";
  std::optional<std::string> mode, transport;
  std::optional<std::size_t> epochs, parties, batch_size;
  std::optional<double> lr, alpha;
  std::optional<int> precision;
};

void apply_train_flags(config::AppConfig& cfg, const TrainArgs& a) {
  if (a.mode) cfg.train.mode = model::parse_mode(*a.mode);
  if (a.epochs) cfg.train.epochs = *a.epochs;
  if (a.parties) cfg.train.mpc.parties = *a.parties;
  if (a.batch_size) cfg.train.batch_size = *a.batch_size;
  if (a.lr) cfg.train.lr = *a.lr;
  if (a.alpha) cfg.train.alpha = *a.alpha;
  if (a.precision) cfg.train.mpc.precision = *a.precision;
  if (a.transport) {
    require(*a.transport == "inproc" || *a.transport == "tcp", ErrorKind::kInvalidArgument,
            "transport must be inproc or tcp");
    cfg.train.mpc.transport =
        *a.transport == "tcp" ? runtime::TransportKind::kTcp : runtime::TransportKind::kInProcess;
  }
  cfg.train.seed = cfg.seed;
}

int cmd_train(const Globals& g, const TrainArgs& a) {
  auto cfg = load_config(g);
  apply_train_flags(cfg, a);
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  cfg.train.validate();

  const auto table = io::read_features(a.features);
  const auto train_rows = table.select("train");
  auto test_rows = table.select("test");
  if (test_rows.size() == 0) test_rows = train_rows;
  const auto stats = features::fit_standardizer(train_rows.x);
  auto train_set = to_dataset(train_rows, "train");
  train_set.x = stats.apply(train_set.x);
  auto test_set = to_dataset(test_rows, "test");
  test_set.x = stats.apply(test_set.x);

  const auto result = model::train(train_set, cfg.train);
  checkpoint::Checkpoint ck;
  ck.mode = cfg.train.mode;
  ck.precision = cfg.train.mpc.precision;
  ck.alpha = cfg.train.alpha;
  ck.standardizer = stats;
  ck.class_names.assign(model::kClassNames.begin(), model::kClassNames.end());
  RealMatrix logits;
  if (cfg.train.mode == model::Mode::kPlain) {
    ck.params = result.params;
    logits = model::predict_logits(result.params, test_set.x, cfg.train.alpha);
  } else {
    ck.parties = cfg.train.mpc.parties;
    ck.shares = result.shares;
    logits = model::predict_logits(*result.shares, test_set.x, cfg.train.alpha, cfg.train.mpc,
                                   derive_seed(cfg.seed, 0x1f))
                 .logits;
  }
  const auto report = metrics::evaluate(logits, test_set.labels);

  const std::string mode(model::to_string(cfg.train.mode));
  const auto base = fs::path(a.out_dir);
  const auto ck_path = (base / (mode + ".ckpt")).string();
  const auto metrics_path = (base / (mode + "_metrics.json")).string();
  const auto roc_path = (base / (mode + "_roc.csv")).string();
  const auto loss_path = (base / (mode + "_loss.csv")).string();
  fs::create_directories(base);
  checkpoint::save(ck_path, ck);

  json mj = metrics::to_json(report, ck.class_names);
  mj["mode"] = mode;
  mj["split"] = test_rows.splits.empty() ? "train" : test_rows.splits.front();
  mj["train_seconds"] = result.seconds;
  mj["final_loss"] = result.loss_curve.back();
  if (cfg.train.mode == model::Mode::kMpc) mj["transcript"] = result.transcript;
  io::write_file(metrics_path, mj.dump(2) + "\n");
  std::ostringstream roc;
  metrics::write_roc_csv(roc, report, ck.class_names);
  io::write_file(roc_path, roc.str());
  std::string loss = "epoch,loss\n";
  for (std::size_t e = 0; e < result.loss_curve.size(); ++e)
    loss += std::to_string(e) + ',' + io::format_double(result.loss_curve[e]) + '\n';
  io::write_file(loss_path, loss);

  auto m = manifest("train", cfg);
  m.seeds["init"] = cfg.train.seed;
  m.inputs = {a.features};
  m.outputs = {ck_path, metrics_path, roc_path, loss_path};
  for (const auto& p : m.outputs) config::write_manifest(p, m);
  emit({{"mode", mode},
        {"checkpoint", ck_path},
        {"accuracy", report.accuracy},
        {"f1", report.f1},
        {"final_loss", result.loss_curve.back()},
        {"train_seconds", result.seconds}});
  return 0;
}

// ---------------------------------------------------------------------------

struct InferArgs {
  std::string checkpoint = "run/plain.ckpt";
  std::string features = "features.csv";
  std::string out = "predictions.csv";
  std::string split;
};

int cmd_infer(const Globals& g, const InferArgs& a) {
  auto cfg = load_config(g);
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  const auto ck = checkpoint::load(a.checkpoint);
  const auto table = io::read_features(a.features).select(a.split);
  require(table.size() > 0, ErrorKind::kInvalidArgument, "no rows to score");
  require(table.x.cols() == ck.d_in(), ErrorKind::kShapeMismatch,
          "feature width does not match the checkpoint");
  const RealMatrix x = ck.standardizer ? ck.standardizer->apply(table.x) : table.x;
  RealMatrix logits;
  if (ck.mode == model::Mode::kPlain) {
    logits = model::predict_logits(ck.params, x, ck.alpha);
  } else {
    model::MpcConfig mc;
    mc.parties = ck.parties;
    mc.precision = ck.precision;
    logits = model::predict_logits(*ck.shares, x, ck.alpha, mc, derive_seed(cfg.seed, 0x1f)).logits;
  }
  const auto pred = model::argmax_rows(logits);
  std::string csv = "id,symbol,predicted";
  for (const auto& c : ck.class_names) csv += ",score_" + c;
  csv += '\n';
  std::size_t correct = 0, known = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& name = ck.class_names.at(static_cast<std::size_t>(pred[i]));
    csv += table.ids[i] + ',' + table.symbols[i] + ',' + name;
    for (double v : logits.row(i)) csv += ',' + io::format_double(v);
    csv += '\n';
    if (!table.symbols[i].empty()) {
      ++known;
      correct += table.symbols[i] == name;
    }
  }
  io::write_file(a.out, csv);
  auto m = manifest("infer", cfg);
  m.inputs = {a.checkpoint, a.features};
  m.outputs = {a.out};
  config::write_manifest(a.out, m);
  json j = {{"rows", table.size()}, {"predictions", a.out}};
  if (known > 0) j["accuracy"] = static_cast<double>(correct) / static_cast<double>(known);
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string modes = "plain,mpc";
  std::string batch = "1,54";
  std::string features;
  std::string out = "bench.csv";
  std::optional<std::size_t> epochs, repeats;
  bool check = false;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  auto cfg = load_config(g);
  if (a.epochs) cfg.bench.train_epochs = *a.epochs;
  if (a.repeats) cfg.bench.repeats = *a.repeats;
  std::vector<std::size_t> batches;
  for (const auto& b : split_list(a.batch)) batches.push_back(std::stoul(b));
  if (!batches.empty()) cfg.bench.batches = batches;
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  require(cfg.bench.batches.size() == 2, ErrorKind::kInvalidArgument,
          "--batch takes two sizes: single,batch");

  timing::BenchSpec spec;
  spec.modes.clear();
  for (const auto& m : split_list(a.modes)) spec.modes.push_back(model::parse_mode(m));
  spec.single_batch = cfg.bench.batches[0];
  spec.batch = cfg.bench.batches[1];
  spec.repeats = cfg.bench.repeats;
  spec.train = cfg.train;
  spec.train.epochs = cfg.bench.train_epochs;
  spec.train.seed = cfg.seed;

  model::Dataset train;
  RealMatrix test;
  if (a.features.empty()) {
    synth::BlobConfig bc;
    bc.seed = cfg.seed;
    auto blobs = synth::make_blobs(bc);
    train = std::move(blobs.train);
    test = blobs.test.x;
  } else {
    const auto table = io::read_features(a.features);
    const auto tr = table.select("train");
    const auto stats = features::fit_standardizer(tr.x);
    train = to_dataset(tr, "train");
    train.x = stats.apply(train.x);
    auto te = table.select("test");
    test = stats.apply(te.size() ? te.x : tr.x);
  }
  const auto rows = timing::run(spec, train, test);
  std::ostringstream csv;
  timing::write_csv(csv, rows);
  io::write_file(a.out, csv.str());
  auto m = manifest("bench", cfg);
  m.inputs = {a.features};
  m.outputs = {a.out};
  config::write_manifest(a.out, m);
  timing::write_table(std::cout, rows, spec);

  const bool both = std::any_of(rows.begin(), rows.end(),
                                [](auto& r) { return r.mode == model::Mode::kPlain; }) &&
                    std::any_of(rows.begin(), rows.end(),
                                [](auto& r) { return r.mode == model::Mode::kMpc; });
  if (!both) return 0;
  const auto c = timing::check(rows, spec);
  std::cout << "mpc/plain latency ratio " << c.latency_ratio << (c.ratio_ok ? " (>= 10)" : " (< 10)")
            << "; mpc batching " << (c.amortized ? "amortizes" : "does not amortize") << '\n';
  return a.check && !(c.ratio_ok && c.amortized) ? kExitFailure : 0;
}

// ---------------------------------------------------------------------------

struct FeedbackArgs {
  std::string symbol = "A";
  std::optional<std::string> id;
  std::string channel = "both";
};

int cmd_feedback(const Globals& g, const FeedbackArgs& a) {
  auto cfg = load_config(g);
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  require(a.channel == "haptic" || a.channel == "visual" || a.channel == "both",
          ErrorKind::kInvalidArgument, "channel must be haptic, visual or both");
  const auto sym = feedback::parse_symbol(a.symbol);
  json j = {{"symbol", feedback::to_string(sym)}, {"meaning", feedback::meaning(sym)}};
  if (a.channel != "visual") {
    const auto sched = feedback::encode_haptic(sym, cfg.haptic, a.id);
    j["haptic"] = feedback::to_json(sched, cfg.haptic);
  }
  if (a.channel != "haptic") j["visual"] = feedback::to_json(feedback::encode_visual(sym, a.id));
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct LweArgs {
  std::string bits = "1011";
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> q;
};

int cmd_lwe_demo(const Globals& g, const LweArgs& a) {
  auto cfg = load_config(g);
  if (a.n) cfg.lwe.n = *a.n;
  if (a.q) cfg.lwe.q = *a.q;
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  std::vector<int> bits;
  for (char c : a.bits) {
    require(c == '0' || c == '1', ErrorKind::kInvalidArgument, "--bits takes 0 and 1 only");
    bits.push_back(c - '0');
  }
  require(!bits.empty(), ErrorKind::kInvalidArgument, "--bits is empty");
  Prng rng(derive_seed(cfg.seed, 0x1e));
  const auto keys = lwe::keygen(cfg.lwe, rng);
  std::vector<lwe::LweCiphertext> cts;
  json rows = json::array();
  std::size_t ok = 0;
  for (int b : bits) {
    cts.push_back(lwe::encrypt_bit(b, keys.pk, rng));
    const int d = lwe::decrypt_bit(cts.back(), keys.sk);
    ok += d == b;
    rows.push_back({{"bit", b}, {"decrypted", d}, {"phase", lwe::phase(cts.back(), keys.sk)}});
  }
  json xors = json::array();
  for (std::size_t i = 0; i + 1 < cts.size(); ++i) {
    const int d = lwe::decrypt_bit(lwe::add_ciphertexts(cts[i], cts[i + 1]), keys.sk);
    xors.push_back({{"pair", {i, i + 1}}, {"expected", bits[i] ^ bits[i + 1]}, {"decrypted", d}});
  }
  emit({{"params",
         {{"n", cfg.lwe.n},
          {"q", cfg.lwe.q},
          {"sigma_key", cfg.lwe.sigma_key},
          {"sigma_err", cfg.lwe.sigma_err},
          {"sigma_enc", cfg.lwe.sigma_enc}}},
        {"ciphertexts", rows},
        {"xor", xors},
        {"correct", ok},
        {"total", bits.size()}});
  return ok == bits.size() ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------

struct MpcDemoArgs {
  std::string role = "all";
  std::string endpoints;
  std::size_t parties = 2;
  std::uint64_t session = 1;
  double timeout = 30.0;
};

runtime::Program demo_program() {
  runtime::Program p;
  p.name = "mpc-demo:leaky(x*w)";
  p.body = [](mpc::Context& ctx) -> std::vector<RealMatrix> {
    const RealMatrix x(3, 4, {0.5, -1.0, 2.0, 0.25, -0.75, 1.5, 0.0, -2.0, 1.0, 1.0, -1.0, 0.5});
    const RealMatrix w(4, 2, {1.0, -0.5, 0.25, 2.0, -1.5, 0.75, 0.5, 1.0});
    const int w_owner = ctx.party_count() > 1 ? 1 : 0;
    auto sx = mpc::share(ctx, 0, ctx.is_local(0) ? &x : nullptr, {3, 4});
    auto sw = mpc::share(ctx, w_owner, ctx.is_local(w_owner) ? &w : nullptr, {4, 2});
    auto y = mpc::leaky_relu(ctx, mpc::matmul(ctx, sx, sw), 0.01).activation;
    auto out = mpc::reveal(ctx, y, 0);
    if (!out) return {};
    return {*out};
  };
  return p;
}

json party_json(const runtime::PartyResult& r) {
  json kinds = json::array();
  for (auto k : r.inbound_kinds) kinds.push_back(std::string(runtime::to_string(k)));
  json j = {{"party", r.party},
            {"transcript", r.transcript.to_json(false)},
            {"frames_sent", r.frames_sent},
            {"bytes_sent", r.bytes_sent}};
  if (!r.outputs.empty()) {
    const auto& m = r.outputs.front();
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
      rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    j["result"] = rows;
  }
  return j;
}

json dealer_json(const runtime::DealerReport& d) {
  std::set<std::string> kinds;
  for (auto k : d.inbound_kinds) kinds.insert(std::string(runtime::to_string(k)));
  return {{"requests", d.requests}, {"inbound_kinds", kinds}};
}

int cmd_mpc_demo(const Globals& g, const MpcDemoArgs& a) {
  auto cfg = load_config(g);
  if (g.print_config) return emit(config::to_json(cfg)), 0;
  runtime::SessionConfig sc;
  sc.parties = a.parties;
  sc.seed = derive_seed(cfg.seed, 0xde30);
  sc.session_id = a.session;
  sc.transport = runtime::TransportKind::kTcp;
  sc.connect_timeout_s = a.timeout;
  std::string spec = a.endpoints;
  if (spec.empty())
    if (const char* env = std::getenv("GESTMPC_ENDPOINTS")) spec = env;
  if (!spec.empty()) sc.endpoints = runtime::parse_endpoints(spec);

  if (a.role == "all") {
    const auto r = runtime::run_session(sc, demo_program());
    json parties = json::array();
    for (const auto& p : r.parties) parties.push_back(party_json(p));
    emit({{"parties", parties}, {"dealer", dealer_json(r.dealer)}});
    return 0;
  }
  require(!sc.endpoints.empty(), ErrorKind::kInvalidArgument,
          "--role other than 'all' needs --endpoints or GESTMPC_ENDPOINTS");
  require(sc.endpoints.size() == a.parties + 1, ErrorKind::kInvalidArgument,
          "expected one endpoint per party plus the dealer");
  int self;
  if (a.role == "dealer") {
    self = static_cast<int>(a.parties);
  } else {
    require(a.role.rfind("party", 0) == 0, ErrorKind::kInvalidArgument,
            "--role must be all, dealer or partyN");
    self = std::stoi(a.role.substr(5));
    require(self >= 0 && static_cast<std::size_t>(self) < a.parties,
            ErrorKind::kInvalidArgument, "party index out of range");
  }
  const auto& me = sc.endpoints[static_cast<std::size_t>(self)];
  auto transport = runtime::connect_tcp(self, sc.endpoints, runtime::TcpListener(me.host, me.port),
                                        a.timeout);
  if (a.role == "dealer") {
    emit({{"dealer", dealer_json(runtime::run_dealer(sc, std::move(transport)))}});
  } else {
    emit(party_json(runtime::run_party(sc, self, demo_program(), std::move(transport))));
  }
  return 0;
}

void report_error(std::string_view kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private gesture communication toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("--print-config", g.print_config, "Print the effective config and exit");
  app.add_option("--seed", g.seed, "Master seed");

  GenDataArgs gen;
  auto* c_gen = app.add_subcommand("gen-data", "Synthesize gesture traces and labels");
  c_gen->add_option("--out", gen.out, "Output directory")->capture_default_str();
  c_gen->add_option("--symbols", gen.symbols, "Comma-separated symbols");
  c_gen->add_option("--reps", gen.reps, "Sessions per user")->check(CLI::PositiveNumber);
  c_gen->add_option("--users", gen.users, "Number of users")->check(CLI::PositiveNumber);

  SegmentArgs seg;
  auto* c_seg = app.add_subcommand("segment", "Cut traces into gesture windows");
  c_seg->add_option("--data", seg.data, "gen-data directory")->capture_default_str();
  c_seg->add_option("--out", seg.out, "Windows JSON")->capture_default_str();
  c_seg->add_option("--threshold", seg.threshold, "Stillness threshold (rad/s)");

  FeaturesArgs feat;
  auto* c_feat = app.add_subcommand("features", "Extract feature vectors per window");
  c_feat->add_option("--data", feat.data, "gen-data directory")->capture_default_str();
  c_feat->add_option("--windows", feat.windows, "Windows JSON")->capture_default_str();
  c_feat->add_option("--out", feat.out, "Feature CSV")->capture_default_str();
  c_feat->add_option("--test-fraction", feat.test_fraction, "Held-out share per symbol");

  ClusterArgs clu;
  auto* c_clu = app.add_subcommand("cluster", "K-means over feature vectors");
  c_clu->add_option("--features", clu.features, "Feature CSV")->capture_default_str();
  c_clu->add_option("--out", clu.out, "Cluster table CSV")->capture_default_str();
  c_clu->add_option("--k", clu.k, "Cluster count");
  c_clu->add_option("--group-by", clu.group_by, "Cluster per 'user'");

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train the classifier");
  c_tr->add_option("--features", tr.features, "Feature CSV")->capture_default_str();
  c_tr->add_option("--out-dir", tr.out_dir, "Artifact directory")->capture_default_str();
  c_tr->add_option("--mode", tr.mode, "plain or mpc");
  c_tr->add_option("--epochs", tr.epochs);
  c_tr->add_option("--lr", tr.lr);
  c_tr->add_option("--alpha", tr.alpha, "Leaky ReLU slope");
  c_tr->add_option("--batch-size", tr.batch_size, "0 = full batch");
  c_tr->add_option("--parties", tr.parties);
  c_tr->add_option("--precision", tr.precision, "Fractional bits");
  c_tr->add_option("--transport", tr.transport, "inproc or tcp");

  InferArgs inf;
  auto* c_inf = app.add_subcommand("infer", "Score feature rows with a checkpoint");
  c_inf->add_option("--checkpoint", inf.checkpoint)->capture_default_str();
  c_inf->add_option("--features", inf.features)->capture_default_str();
  c_inf->add_option("--out", inf.out, "Predictions CSV")->capture_default_str();
  c_inf->add_option("--split", inf.split, "Only rows of this split");

  BenchArgs be;
  auto* c_be = app.add_subcommand("bench", "Training and inference timing table");
  c_be->add_option("--modes", be.modes)->capture_default_str();
  c_be->add_option("--batch", be.batch, "single,batch")->capture_default_str();
  c_be->add_option("--features", be.features, "Feature CSV (synthetic blobs when absent)");
  c_be->add_option("--out", be.out, "CSV output")->capture_default_str();
  c_be->add_option("--epochs", be.epochs, "Training epochs per mode");
  c_be->add_option("--repeats", be.repeats, "Timed repeats per batch size");
  c_be->add_flag("--check", be.check, "Exit 1 unless mpc latency >= 10x plain and batching amortizes");

  FeedbackArgs fb;
  auto* c_fb = app.add_subcommand("feedback", "Haptic and visual codes for a symbol");
  c_fb->add_option("--symbol", fb.symbol)->capture_default_str();
  c_fb->add_option("--id", fb.id, "Sender id bits, up to 8");
  c_fb->add_option("--channel", fb.channel, "haptic, visual or both")->capture_default_str();

  LweArgs lw;
  auto* c_lw = app.add_subcommand("lwe-demo", "Encrypt, decrypt and add bits under LWE");
  c_lw->add_option("--bits", lw.bits)->capture_default_str();
  c_lw->add_option("--n", lw.n, "Lattice dimension");
  c_lw->add_option("--q", lw.q, "Modulus");

  MpcDemoArgs md;
  auto* c_md = app.add_subcommand("mpc-demo", "Shared matmul + Leaky ReLU over TCP");
  c_md->add_option("--role", md.role, "all, partyN or dealer")->capture_default_str();
  c_md->add_option("--endpoints", md.endpoints,
                   "host:port per party then dealer (or GESTMPC_ENDPOINTS)");
  c_md->add_option("--parties", md.parties)->capture_default_str();
  c_md->add_option("--session", md.session)->capture_default_str();
  c_md->add_option("--timeout", md.timeout, "Connect timeout (s)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (c_gen->parsed()) return cmd_gen_data(g, gen);
    if (c_seg->parsed()) return cmd_segment(g, seg);
    if (c_feat->parsed()) return cmd_features(g, feat);
    if (c_clu->parsed()) return cmd_cluster(g, clu);
    if (c_tr->parsed()) return cmd_train(g, tr);
    if (c_inf->parsed()) return cmd_infer(g, inf);
    if (c_be->parsed()) return cmd_bench(g, be);
    if (c_fb->parsed()) return cmd_feedback(g, fb);
    if (c_lw->parsed()) return cmd_lwe_demo(g, lw);
    if (c_md->parsed()) return cmd_mpc_demo(g, md);
  } catch (const Error& e) {
    report_error(to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::kInvalidArgument ? kExitUsage : kExitFailure;
  } catch (const json::exception& e) {
    report_error("format", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
