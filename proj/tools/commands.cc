// Copyright 2026 The fogvl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "fogvl/constants.h"
#include "fogvl/data.h"
#include "fogvl/error.h"
#include "fogvl/harness.h"
#include "fogvl/report.h"

namespace fogvl::cli {

namespace {

struct Options {
  std::string dataset = "synthetic";
  std::string synthetic = "linear";
  std::size_t devices = 4;
  std::size_t fogs = 2;
  std::size_t threshold = 0;
  std::size_t fog_threshold = 0;
  double alpha = 0.5;
  std::size_t iters = 10000;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::string adversary = "none";
  std::string dropout;
  std::string out;
  unsigned scale = 0;
  std::string constants;
  double noise = 0.1;
  std::size_t samples = 0;
  std::size_t features = 4;
  std::size_t classes = 5;
  double test_fraction = -1.0;
  std::string partition = "contiguous";
  std::size_t retries = 1;
  bool parallel = false;
  bool oracle = false;
  std::string config;
};

bool is_flag_key(const std::string& key) {
  return key == "parallel" || key == "oracle";
}

// Appends `--key value` for every config-file entry whose flag is absent
// from the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? eq : eq - 2);
    given.insert(name);
    if (name == "config") {
      if (eq != std::string::npos) {
        path = a.substr(eq + 1);
      } else if (i + 1 < args.size()) {
        path = args[i + 1];
      }
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::vector<std::string> out = args;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config" || given.count(key)) continue;
    if (is_flag_key(key)) {
      if (value == "true" || value == "1") out.push_back("--" + key);
      continue;
    }
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config,
                  "File of key=value lines naming long flags (flags win)");
  app->add_option("--dataset", o.dataset, "Data source")
      ->check(CLI::IsMember({"ccpp", "telemetry", "synthetic"}))
      ->capture_default_str();
  app->add_option("--synthetic", o.synthetic,
                  "Model kind of the synthetic generator")
      ->check(CLI::IsMember({"linear", "logistic"}))
      ->capture_default_str();
  app->add_option("--devices", o.devices, "Total devices N")->capture_default_str();
  app->add_option("--fogs", o.fogs, "Fog nodes m")->capture_default_str();
  app->add_option("--threshold", o.threshold,
                  "Device sharing threshold t (0: floor(n/2)+1)")
      ->capture_default_str();
  app->add_option("--fog-threshold", o.fog_threshold,
                  "Fog sharing threshold (0: floor(m/2)+1)")
      ->capture_default_str();
  app->add_option("--alpha", o.alpha, "Learning rate")->capture_default_str();
  app->add_option("--iters", o.iters, "Maximum rounds")->capture_default_str();
  app->add_option("--tol", o.tol, "Stop when the update's max norm is below")
      ->capture_default_str();
  app->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app->add_option("--adversary", o.adversary, "Malicious cloud behaviour")
      ->check(CLI::IsMember({"none", "forge_y", "forge_sigma", "forge_both",
                             "targeted_delta"}))
      ->capture_default_str();
  app->add_option("--dropout", o.dropout,
                  "Dropout schedule file ('<round> <device> pre|post' lines)");
  app->add_option("--out", o.out, "Report path (default: stdout)");
  app->add_option("--scale", o.scale,
                  "Fixed-point fraction bits (0: from the constants file)")
      ->capture_default_str();
  app->add_option("--constants", o.constants, "Protocol constants file");
  app->add_option("--noise", o.noise, "Synthetic label noise")->capture_default_str();
  app->add_option("--samples", o.samples,
                  "Rows to use (0: 1000 synthetic, 9000 ccpp, 90000 telemetry)")
      ->capture_default_str();
  app->add_option("--features", o.features, "Synthetic feature count")
      ->capture_default_str();
  app->add_option("--classes", o.classes, "Synthetic class count (logistic)")
      ->capture_default_str();
  app->add_option("--test-fraction", o.test_fraction,
                  "Held-out fraction (negative: 0.2 for files, none for synthetic)")
      ->capture_default_str();
  app->add_option("--partition", o.partition, "Row partition across devices")
      ->check(CLI::IsMember({"contiguous", "shuffled"}))
      ->capture_default_str();
  app->add_option("--retries", o.retries, "Retries of a rejected round")
      ->capture_default_str();
  app->add_flag("--parallel", o.parallel, "Run device work with OpenMP");
}

struct LoadedData {
  Dataset train;
  Dataset test;
  ModelKind kind = ModelKind::kLinear;
  std::string line;
  Matrix truth;  // synthetic only
};

std::filesystem::path data_dir() {
  const char* env = std::getenv("SPRITE_DATA_DIR");
  return env != nullptr && *env != '\0' ? std::filesystem::path(env)
                                        : std::filesystem::path("data");
}

std::filesystem::path require_file(const std::string& name) {
  const std::filesystem::path path = data_dir() / name;
  if (!std::filesystem::exists(path)) {
    throw DataError(path.string() +
                    " not found; run tools/fetch_datasets.sh or set "
                    "SPRITE_DATA_DIR");
  }
  return path;
}

LoadedData load_data(const Options& o) {
  LoadedData out;
  std::ostringstream line;
  line.precision(10);
  double frac = o.test_fraction;
  Dataset all;
  std::vector<std::string> warnings;
  if (o.dataset == "synthetic") {
    out.kind = parse_model_kind(o.synthetic);
    const std::size_t rows = o.samples ? o.samples : 1000;
    SyntheticDataset s = synth_dataset(o.seed, out.kind, rows, o.features,
                                       o.noise, o.classes);
    all = std::move(s.data);
    out.truth = std::move(s.true_theta);
    if (frac < 0) frac = 0.0;
    line << "record=dataset source=synthetic kind=" << to_string(out.kind)
         << " samples=" << rows << " features=" << o.features
         << " noise=" << o.noise;
  } else if (o.dataset == "ccpp") {
    out.kind = ModelKind::kLinear;
    all = load_ccpp(require_file("ccpp.csv"), &warnings);
    const std::size_t rows = o.samples ? o.samples : 9000;
    all = subsample(all, rows, o.seed);
    if (frac < 0) frac = 0.2;
    line << "record=dataset source=ccpp samples=" << all.samples();
  } else {
    out.kind = ModelKind::kLogistic;
    const std::size_t rows = o.samples ? o.samples : 90000;
    all = load_telemetry(require_file("telemetry.csv"), rows, o.seed);
    if (frac < 0) frac = 0.2;
    line << "record=dataset source=telemetry samples=" << all.samples();
  }
  if (frac > 0.0) {
    TrainTestSplit split = train_test_split(all, frac, o.seed);
    out.train = std::move(split.train);
    out.test = std::move(split.test);
  } else {
    out.train = std::move(all);
  }
  if (o.dataset != "synthetic") {
    NormalizedDataset norm = normalize(out.train);
    out.train = std::move(norm.data);
    if (!out.test.empty()) out.test = norm.transform.apply(out.test);
    for (const std::string& w : norm.transform.warnings) warnings.push_back(w);
  }
  line << " train=" << out.train.samples() << " test=" << out.test.samples()
       << " split_seed=" << o.seed << " test_fraction=" << frac
       << " warnings=" << warnings.size();
  out.line = line.str();
  return out;
}

WorldConfig make_config(const Options& o, ModelKind kind) {
  WorldConfig cfg;
  if (!o.constants.empty()) cfg.constants = ProtocolConstants::load(o.constants);
  if (o.scale != 0) cfg.constants.frac_bits = o.scale;
  cfg.devices = o.devices;
  cfg.fogs = o.fogs;
  cfg.threshold = o.threshold;
  cfg.fog_threshold = o.fog_threshold;
  cfg.kind = kind;
  cfg.hp.alpha = o.alpha;
  cfg.hp.max_iters = o.iters;
  cfg.hp.tol = o.tol;
  cfg.seed = o.seed;
  cfg.adversary = parse_adversary(o.adversary);
  if (!o.dropout.empty()) cfg.dropout = DropoutSchedule::load(o.dropout);
  cfg.partition = o.partition == "shuffled" ? PartitionStrategy::kShuffled
                                            : PartitionStrategy::kContiguous;
  cfg.retries = o.retries;
  cfg.parallel = o.parallel;
  cfg.validate();
  return cfg;
}

// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  LoadedData data = load_data(o);
  const WorldConfig cfg = make_config(o, data.kind);
  TrainingOptions topt;
  topt.test = data.test.empty() ? nullptr : &data.test;
  topt.run_oracle = o.oracle;
  topt.dataset_line = data.line;
  const TrainingReport report = run_training(cfg, data.train, topt);
  Sink sink(o.out, out);
  report.write(sink.get());
  if (data.truth.size() == report.theta.theta.size()) {
    const double gap =
        (report.theta.theta - data.truth).cwiseAbs().maxCoeff();
    sink.get() << "record=truth max_abs_gap=" << gap << '\n';
  }
  if (cfg.adversary != AdversaryMode::kNone) {
    if (report.accepted == 0) return kExitOk;
    err << "forged aggregate accepted in " << report.accepted << " round(s)\n";
    return kExitRejected;
  }
  if (report.rejected > 0) {
    err << "honest run saw " << report.rejected << " rejected round(s)\n";
    return kExitRejected;
  }
  if (!report.converged) {
    err << "no convergence within " << cfg.hp.max_iters << " rounds\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_verify_demo(const Options& o, std::ostream& out, std::ostream&) {
  Options toy = o;
  toy.dataset = "synthetic";
  if (toy.samples == 0) toy.samples = 200;
  const LoadedData data = load_data(toy);
  bool ok = true;
  std::ostringstream transcript;
  const AdversaryMode modes[] = {AdversaryMode::kNone, AdversaryMode::kForgeY,
                                 AdversaryMode::kForgeSigma,
                                 AdversaryMode::kForgeBoth,
                                 AdversaryMode::kTargetedDelta};
  for (AdversaryMode mode : modes) {
    WorldConfig cfg = make_config(toy, data.kind);
    cfg.adversary = mode;
    World world = build_world(cfg, data.train);
    const RoundReport round = run_round(world);
    const bool honest = mode == AdversaryMode::kNone;
    ok = ok && round.verified == honest;
    if (!honest) transcript << "; ";
    transcript << (honest ? "honest" : to_string(mode)) << ": "
               << (round.verified ? "ACCEPT" : "REJECT");
  }
  Sink sink(o.out, out);
  sink.get() << transcript.str() << '\n';
  return ok ? kExitOk : kExitFailure;
}

int cmd_bench(const Options& o, const std::string& kinds, std::size_t rounds,
              std::ostream& out) {
  static constexpr std::pair<std::size_t, std::size_t> kGrid[] = {
      {50, 10}, {100, 10}, {200, 20}, {400, 40},
      {500, 50}, {800, 80}, {1000, 100}};
  std::vector<ModelKind> todo;
  if (kinds != "logistic") todo.push_back(ModelKind::kLinear);
  if (kinds != "linear") todo.push_back(ModelKind::kLogistic);
  Sink sink(o.out, out);
  bool all_match = true;
  for (ModelKind kind : todo) {
    for (auto [total, per] : kGrid) {
      Options point = o;
      point.devices = total;
      point.fogs = total / per;
      const std::size_t outputs = kind == ModelKind::kLinear ? 1 : o.classes;
      const SyntheticDataset s = synth_dataset(o.seed, kind, total * 10,
                                               o.features, o.noise, outputs);
      WorldConfig cfg = make_config(point, kind);
      World world = build_world(cfg, s.data);
      std::vector<RoundReport> reports;
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t r = 0; r < rounds; ++r) reports.push_back(run_round(world));
      const double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      const OverheadTable table =
          overhead_report(reports, cfg, o.features + 1, outputs);
      all_match = all_match && table.matches();
      for (const std::string& line : table.lines()) sink.get() << line << '\n';
      sink.get() << "record=bench_timing kind=" << to_string(kind)
                 << " N=" << total << " n=" << per << " rounds=" << rounds
                 << " seconds_per_round=" << secs / static_cast<double>(rounds)
                 << '\n';
    }
  }
  return all_match ? kExitOk : kExitFailure;
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
  LoadedData data = load_data(o);
  const WorldConfig cfg = make_config(o, data.kind);
  TrainingOptions topt;
  topt.run_oracle = true;
  topt.dataset_line = data.line;
  const TrainingReport report = run_training(cfg, data.train, topt);
  const OracleComparison& oc = report.oracle;
  const bool pass = oc.ok() && report.converged && report.rejected == 0;
  Sink sink(o.out, out);
  sink.get() << report.config_line << '\n' << report.dataset_line << '\n';
  sink.get() << "record=summary status=" << report.status
             << " rounds=" << report.rounds.size() << '\n';
  sink.get() << oc.to_line() << '\n';
  if (!pass) {
    const Matrix& a = report.theta.theta;
    const Matrix& b = oc.oracle_theta.theta;
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
      sink.get() << "record=diff index=" << i << " distributed=" << a.data()[i]
                 << " centralized=" << b.data()[i]
                 << " abs_gap=" << std::abs(a.data()[i] - b.data()[i]) << '\n';
    }
    err << "oracle-check: FAIL\n";
    return kExitFailure;
  }
  sink.get() << "oracle-check: PASS\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Verifiable two-tier collaborative regression simulator"};
  app.name("fogvl");
  app.require_subcommand(1);

  Options train_o, demo_o, bench_o, oracle_o;
  std::string bench_kinds = "both";
  std::size_t bench_rounds = 1;

  CLI::App* train = app.add_subcommand("train", "Run distributed training");
  add_common(train, train_o);
  train->add_flag("--oracle", train_o.oracle,
                  "Also compare against centralized gradient descent");

  CLI::App* demo = app.add_subcommand(
      "verify-demo", "One honest round and one round per forgery mode");
  add_common(demo, demo_o);

  CLI::App* bench = app.add_subcommand(
      "bench", "Element accounting over the (N, n) grid");
  add_common(bench, bench_o);
  bench->add_option("--kind", bench_kinds, "Regression kinds to sweep")
      ->check(CLI::IsMember({"linear", "logistic", "both"}))
      ->capture_default_str();
  bench->add_option("--rounds", bench_rounds, "Rounds per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Distributed against centralized training");
  add_common(oracle, oracle_o);

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train->parsed()) return cmd_train(train_o, out, err);
    if (demo->parsed()) return cmd_verify_demo(demo_o, out, err);
    if (bench->parsed()) return cmd_bench(bench_o, bench_kinds, bench_rounds, out);
    if (oracle->parsed()) return cmd_oracle_check(oracle_o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PolicyError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace fogvl::cli
