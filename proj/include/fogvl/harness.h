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

// Deterministic simulation driver.

#ifndef FOGVL_HARNESS_H_
#define FOGVL_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fogvl/constants.h"
#include "fogvl/data.h"
#include "fogvl/protocol.h"
#include "fogvl/regression.h"
#include "fogvl/report.h"

namespace fogvl {

enum class AdversaryMode {
  kNone,
  kForgeY,
  kForgeSigma,
  kForgeBoth,
  kTargetedDelta,
};

std::string_view to_string(AdversaryMode mode);
AdversaryMode parse_adversary(std::string_view s);

enum class DropStage { kPreDistribution, kPostDistribution };

std::string_view to_string(DropStage stage);

struct DropoutEntry {
  std::uint64_t round_id = 0;
  int device_id = 0;
  DropStage stage = DropStage::kPostDistribution;
};

struct DropoutSchedule {
  std::vector<DropoutEntry> entries;

  std::vector<DropoutEntry> for_round(std::uint64_t round_id) const;
  bool empty() const { return entries.empty(); }

  // Text form, one entry per line: `<round> <device> pre|post`. Blank
  // lines and `#` comments are ignored.
  static DropoutSchedule parse(std::istream& in);
  static DropoutSchedule load(const std::filesystem::path& path);
};

struct WorldConfig {
  std::size_t devices = 4;        // N
  std::size_t fogs = 2;           // m
  std::size_t threshold = 0;      // t; 0 picks floor(n/2) + 1
  std::size_t fog_threshold = 0;  // 0 picks floor(m/2) + 1
  ModelKind kind = ModelKind::kLinear;
  Hyperparams hp;
  ProtocolConstants constants;
  DropoutSchedule dropout;
  AdversaryMode adversary = AdversaryMode::kNone;
  std::vector<double> targeted_delta;  // decoded units; empty picks e_0
  PartitionStrategy partition = PartitionStrategy::kContiguous;
  std::vector<double> partition_fractions;  // non-empty overrides partition
  std::uint64_t seed = 1;
  bool parallel = false;
  std::size_t retries = 1;

  std::size_t per_cluster() const;  // n
  SharingPolicy device_policy() const;
  SharingPolicy fog_policy() const;
  // Throws ConfigError; also checks the dropout schedule against n - t.
  void validate() const;
  std::string to_line() const;
};

struct World {
  WorldConfig cfg;
  SetupBundle setup;
  std::vector<Device> devices;
  std::vector<Fog> fogs;
  Cloud cloud;
  std::uint64_t next_round = 1;
  Eigen::Index theta_rows = 0;
  Eigen::Index theta_cols = 0;

  // Reference parameters (every device holds the same copy).
  const ModelParams& theta() const { return devices.front().theta(); }
  std::uint64_t fingerprint() const;
};

// Partitions `train` over the devices, forms clusters of n consecutive
// devices per fog and runs setup.
World build_world(const WorldConfig& cfg, const Dataset& train);

// One full round. Cluster aborts are recorded in the report; a fog
// dropout or protocol violation throws.
RoundReport run_round(World& world);

// Corrupts an aggregate. Throws PolicyError for targeted_delta with a
// zero perturbation.
Message adversary_forge(AdversaryMode mode, const Message& aggregate,
                        const ProtocolConstants& constants,
                        std::mt19937_64& rng,
                        const std::vector<double>& delta = {});

struct TrainingOptions {
  const Dataset* test = nullptr;
  bool run_oracle = true;
  std::string dataset_line;
};

// Rounds until the update's infinity norm falls below tol or max_iters.
// A rejected round is retried `retries` times before training stops with
// status verification_failed.
TrainingReport run_training(const WorldConfig& cfg, const Dataset& train,
                            const TrainingOptions& options = {});

OverheadTable overhead_report(const std::vector<RoundReport>& reports,
                              const WorldConfig& cfg, std::size_t coords,
                              std::size_t outputs);

}  // namespace fogvl

#endif  // FOGVL_HARNESS_H_
