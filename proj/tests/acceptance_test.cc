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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <bit>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fogvl/data.h"
#include "fogvl/error.h"
#include "fogvl/harness.h"
#include "fogvl/kernels.h"

namespace fogvl {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::filesystem::path data_dir() {
  const char* env = std::getenv("SPRITE_DATA_DIR");
  return env != nullptr && *env != '\0' ? env : "data";
}

// Oracle equivalence at (m = 2, n = 4, t = 3) on synthetic linear data.
Outcome oracle_equivalence(std::size_t samples, double budget) {
  const auto start = Clock::now();
  const Dataset data = synth_dataset(1, ModelKind::kLinear, samples, 4, 0.1).data;
  WorldConfig cfg;
  cfg.devices = 8;
  cfg.fogs = 2;
  cfg.threshold = 3;
  cfg.hp = {0.5, 10000, 1e-6};
  const TrainingReport r = run_training(cfg, data);
  Outcome o;
  o.seconds = seconds_since(start);
  o.pass = r.converged && r.rejected == 0 && r.oracle.ok() && o.seconds < budget;
  std::ostringstream d;
  d << "samples=" << samples << " rounds=" << r.rounds.size()
    << " final_rel_gap=" << r.oracle.final_rel_gap << " (tol 1e-3)"
    << " max_round_gap=" << r.oracle.max_round_gap << " (tol "
    << r.oracle.round_tolerance << ")";
  o.detail = d.str();
  return o;
}

Outcome completeness() {
  const auto start = Clock::now();
  std::size_t rounds = 0, accepted = 0;
  for (std::size_t m : {2u, 3u, 5u, 8u}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      WorldConfig cfg;
      cfg.fogs = m;
      cfg.devices = m * (2 + seed % 3);
      cfg.seed = seed;
      cfg.kind = seed % 2 ? ModelKind::kLinear : ModelKind::kLogistic;
      const Dataset data =
          synth_dataset(seed, cfg.kind, 40 * cfg.devices, 3, 0.2, 3).data;
      World w = build_world(cfg, data);
      for (int i = 0; i < 10; ++i) {
        ++rounds;
        accepted += run_round(w).verified ? 1 : 0;
      }
    }
  }
  Outcome o;
  o.seconds = seconds_since(start);
  o.pass = rounds == 1000 && accepted == rounds && o.seconds < 60.0;
  o.detail = std::to_string(accepted) + "/" + std::to_string(rounds) +
             " honest rounds accepted over m in {2,3,5,8}";
  return o;
}

Outcome soundness() {
  const auto start = Clock::now();
  std::ostringstream d;
  bool pass = true;
  for (AdversaryMode mode : {AdversaryMode::kForgeY, AdversaryMode::kForgeSigma,
                             AdversaryMode::kForgeBoth,
                             AdversaryMode::kTargetedDelta}) {
    std::size_t rounds = 0, accepted = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      WorldConfig cfg;
      cfg.fogs = 1 + seed % 5;
      cfg.devices = cfg.fogs * 3;
      cfg.seed = seed;
      cfg.adversary = mode;
      if (mode == AdversaryMode::kTargetedDelta) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        cfg.targeted_delta = {u(rng) + 3.0, u(rng), u(rng)};
      }
      const Dataset data = synth_dataset(seed, cfg.kind, 30 * cfg.devices, 3, 0.2).data;
      World w = build_world(cfg, data);
      for (int i = 0; i < 10; ++i) {
        ++rounds;
        accepted += run_round(w).verified ? 1 : 0;
      }
    }
    pass = pass && rounds == 1000 && accepted == 0;
    d << to_string(mode) << "=" << accepted << "/" << rounds << " ";
  }
  Outcome o;
  o.seconds = seconds_since(start);
  o.pass = pass && o.seconds < 120.0;
  o.detail = d.str() + "accepted";
  return o;
}

Outcome dropout_invariance() {
  const auto start = Clock::now();
  std::size_t cases = 0, identical = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    WorldConfig cfg;
    cfg.fogs = 2;
    cfg.devices = 2 * n;
    cfg.threshold = n / 2 + 1;
    const std::size_t slack = n - cfg.threshold;
    const Dataset data = synth_dataset(n, ModelKind::kLinear, 30 * cfg.devices, 3, 0.1).data;
    World ref_world = build_world(cfg, data);
    const RoundReport ref = run_round(ref_world);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > slack) continue;
      // The same drop set in both clusters, shifted to each cluster's ids.
      WorldConfig drop = cfg;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask & (1u << j)) == 0) continue;
        for (std::size_t c = 0; c < 2; ++c) {
          drop.dropout.entries.push_back(
              {1, static_cast<int>(c * n + j), DropStage::kPostDistribution});
        }
      }
      World w = build_world(drop, data);
      const RoundReport r = run_round(w);
      ++cases;
      identical += r.verified && r.cluster_sums == ref.cluster_sums ? 1 : 0;
    }
  }
  Outcome o;
  o.seconds = seconds_since(start);
  o.pass = identical == cases;
  o.detail = std::to_string(identical) + "/" + std::to_string(cases) +
             " drop sets (n<=6, t=floor(n/2)+1) gave bit-identical cluster sums";
  return o;
}

Outcome ccpp_regression() {
  const auto path = data_dir() / "ccpp.csv";
  if (!std::filesystem::exists(path)) {
    Outcome o = oracle_equivalence(9000, 300.0);
    o.detail = "dataset-unavailable (" + path.string() +
               "); substituted oracle equivalence: " + o.detail;
    return o;
  }
  const auto start = Clock::now();
  const Dataset all = subsample(load_ccpp(path), 9000, 1);
  const TrainTestSplit split = train_test_split(all, 0.2, 1);
  const NormalizedDataset norm = normalize(split.train);
  const Dataset test = norm.transform.apply(split.test);
  WorldConfig cfg;
  cfg.devices = 8;
  cfg.fogs = 2;
  cfg.hp = {0.5, 10000, 1e-6};
  TrainingOptions opt;
  opt.test = &test;
  opt.run_oracle = false;
  const TrainingReport r = run_training(cfg, norm.data, opt);
  Outcome o;
  o.seconds = seconds_since(start);
  const MetricsReport& m = *r.test_metrics;
  o.pass = m.rmse <= 4.7 && m.r2 >= 0.92 && o.seconds < 300.0;
  std::ostringstream d;
  d << "test rmse=" << m.rmse << " (<= 4.7) r2=" << m.r2 << " (>= 0.92) rounds="
    << r.rounds.size() << " status=" << r.status;
  o.detail = d.str();
  return o;
}

Outcome telemetry_classification() {
  const auto path = data_dir() / "telemetry.csv";
  if (!std::filesystem::exists(path)) {
    Outcome o = oracle_equivalence(9000, 300.0);
    o.detail = "dataset-unavailable (" + path.string() +
               "); substituted oracle equivalence: " + o.detail;
    return o;
  }
  const auto start = Clock::now();
  const Dataset all = load_telemetry(path, 90000, 1);
  const TrainTestSplit split = train_test_split(all, 0.2, 1);
  const NormalizedDataset norm = normalize(split.train);
  const Dataset test = norm.transform.apply(split.test);
  WorldConfig cfg;
  cfg.devices = 8;
  cfg.fogs = 2;
  cfg.kind = ModelKind::kLogistic;
  cfg.hp = {0.5, 3000, 1e-6};
  TrainingOptions opt;
  opt.test = &test;
  opt.run_oracle = false;
  const TrainingReport r = run_training(cfg, norm.data, opt);
  Outcome o;
  o.seconds = seconds_since(start);
  const MetricsReport& m = *r.test_metrics;
  o.pass = m.accuracy >= 99.0;
  std::ostringstream d;
  d << "test accuracy=" << m.accuracy << "% (>= 99.0) rounds=" << r.rounds.size()
    << " status=" << r.status;
  o.detail = d.str();
  return o;
}

Outcome byte_accounting() {
  const auto start = Clock::now();
  std::ostringstream d;
  bool pass = true;
  for (ModelKind kind : {ModelKind::kLinear, ModelKind::kLogistic}) {
    const std::size_t outputs = kind == ModelKind::kLinear ? 1 : 5;
    for (auto [total, per] : {std::pair<std::size_t, std::size_t>{100, 10}, {1000, 100}}) {
      WorldConfig cfg;
      cfg.devices = total;
      cfg.fogs = total / per;
      cfg.kind = kind;
      const Dataset data = synth_dataset(7, kind, total * 10, 4, 0.1, outputs).data;
      World w = build_world(cfg, data);
      std::vector<RoundReport> rounds = {run_round(w), run_round(w)};
      const OverheadTable t = overhead_report(rounds, cfg, 5, outputs);
      pass = pass && t.matches() && t.device_ratio() == 10.0;
      d << to_string(kind) << "(" << total << "," << per << "):"
        << (t.matches() ? "match" : "MISMATCH") << ",ratio=" << t.device_ratio()
        << " ";
    }
  }
  Outcome o;
  o.seconds = seconds_since(start);
  o.pass = pass;
  o.detail = d.str() + "(closed forms: device n*d, fog d(m+2), cloud 2d)";
  return o;
}

// Serial against OpenMP gradient on a 90000 x 31 logistic problem.
std::string kernel_timing() {
  const SyntheticDataset s = synth_dataset(3, ModelKind::kLogistic, 90000, 30, 0.1, 5);
  const Matrix theta = Matrix::Constant(31, 5, 0.01);
  const auto time = [&](auto&& fn) {
    const auto start = Clock::now();
    for (int i = 0; i < 5; ++i) fn();
    return seconds_since(start) / 5;
  };
  const double serial = time([&] {
    (void)kernels::serial::gradient(s.data.features, s.data.labels, theta,
                                    ModelKind::kLogistic);
  });
  const double par = time([&] {
    (void)kernels::omp::gradient(s.data.features, s.data.labels, theta,
                                 ModelKind::kLogistic);
  });
  std::ostringstream d;
  d << "gradient_serial_s=" << serial << " gradient_omp_s=" << par;
  return d.str();
}

}  // namespace
}  // namespace fogvl

int main() {
  using fogvl::Outcome;
  int failures = 0;
  double times[8] = {};
  const auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    times[id - 1] = o.seconds;
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " "
              << name << ": " << o.detail << " [" << o.seconds << " s]"
              << std::endl;
  };
  report(1, "oracle equivalence", [] { return fogvl::oracle_equivalence(1000, 30.0); });
  report(2, "verification completeness", fogvl::completeness);
  report(3, "forgery soundness", fogvl::soundness);
  report(4, "dropout invariance", fogvl::dropout_invariance);
  report(5, "linear regression on CCPP", fogvl::ccpp_regression);
  report(6, "logistic regression on telemetry", fogvl::telemetry_classification);
  report(7, "byte accounting", fogvl::byte_accounting);
  report(8, "timing (informational)", [&] {
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    for (int i = 0; i < 7; ++i) d << "c" << (i + 1) << "=" << times[i] << "s ";
    d << fogvl::kernel_timing();
    o.detail = d.str();
    return o;
  });
  return failures == 0 ? 0 : 1;
}
