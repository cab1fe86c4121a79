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

// Run reports. Every record is one line of space-separated key=value
// pairs starting with `record=<type>`. The report hash covers every line
// except wall-clock timings.

#ifndef FOGVL_REPORT_H_
#define FOGVL_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fogvl/field.h"
#include "fogvl/protocol.h"
#include "fogvl/regression.h"

namespace fogvl {

std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t state = 0xcbf29ce484222325ULL);
std::uint64_t theta_hash(const Matrix& theta);
std::string hex64(std::uint64_t v);

struct RoundReport {
  std::uint64_t round_id = 0;
  std::size_t attempt = 0;  // 1 for the retry of a rejected round
  bool verified = false;
  std::vector<int> participants;
  std::vector<int> dropped_pre;
  std::vector<int> dropped_post;
  std::vector<int> aborted_clusters;
  std::size_t sample_total = 0;

  // Elements put on the network per entity (self-addressed messages
  // excluded, a broadcast counted once).
  std::vector<std::size_t> device_elements;
  std::vector<std::size_t> fog_elements;
  std::size_t cloud_elements = 0;
  std::size_t bulletin_elements = 0;
  std::size_t device_elements_total = 0;
  std::size_t fog_elements_total = 0;

  std::vector<std::vector<FieldElement>> cluster_sums;  // F_q, per fog
  std::vector<double> aggregate;  // decoded y
  std::vector<double> update;     // x, empty when rejected
  std::map<Role, std::set<MessageKind>> consumed;
  std::uint64_t theta_hash = 0;

  std::string to_line() const;
  // Drops the per-entity detail, keeping what to_line() prints.
  void compact();
};

struct OracleComparison {
  bool ran = false;
  double round_tolerance = 0.0;
  double max_round_gap = 0.0;  // max |x - centralized update| over rounds
  double final_tolerance = 1e-3;
  double final_rel_gap = 0.0;  // max relative gap of the final thetas
  std::size_t oracle_iterations = 0;
  bool oracle_converged = false;
  ModelParams oracle_theta;

  bool round_ok() const { return max_round_gap <= round_tolerance; }
  bool final_ok() const { return final_rel_gap <= final_tolerance; }
  bool ok() const { return ran && round_ok() && final_ok(); }
  std::string to_line() const;
};

struct TrainingReport {
  std::string config_line;
  std::string dataset_line;
  std::vector<RoundReport> rounds;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool converged = false;
  // converged | max_iters | verification_failed
  std::string status;
  ModelParams theta;
  std::optional<MetricsReport> train_metrics;
  std::optional<MetricsReport> test_metrics;
  OracleComparison oracle;
  double wall_seconds = 0.0;

  std::vector<std::string> lines() const;
  std::uint64_t hash() const;
  // lines(), then the hash record, then the timing record.
  void write(std::ostream& out) const;
};

struct ClosedForms {
  std::size_t device = 0;
  std::size_t fog = 0;
  std::size_t cloud = 0;
  std::size_t flat_device = 0;
  std::size_t flat_cloud = 0;
};

// Per-round elements for one entity of each role. `coords` is x + 1,
// `outputs` is c (1 for linear), `digest` is |H| in elements.
ClosedForms closed_form_elements(std::size_t total_devices,
                                 std::size_t per_cluster, std::size_t fogs,
                                 std::size_t coords, std::size_t outputs,
                                 std::size_t digest = 1);

struct OverheadRow {
  Role role = Role::kDevice;
  double measured_mean = 0.0;
  std::size_t measured_max = 0;
  std::size_t closed_form = 0;
  std::size_t flat = 0;  // 0 where there is no counterpart

  bool matches() const {
    return measured_max == closed_form &&
           measured_mean == static_cast<double>(closed_form);
  }
};

struct OverheadTable {
  ModelKind kind = ModelKind::kLinear;
  std::size_t total_devices = 0;
  std::size_t per_cluster = 0;
  std::size_t fogs = 0;
  std::size_t coords = 0;
  std::size_t outputs = 1;
  std::size_t rounds = 0;
  std::vector<OverheadRow> rows;  // device, fog, cloud

  double device_ratio() const;  // flat device / ours
  bool matches() const;
  std::vector<std::string> lines() const;
};

}  // namespace fogvl

#endif  // FOGVL_REPORT_H_
