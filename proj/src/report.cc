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

#include "fogvl/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace fogvl {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::uint64_t theta_hash(const Matrix& theta) {
  std::string bytes(reinterpret_cast<const char*>(theta.data()),
                    sizeof(double) * static_cast<std::size_t>(theta.size()));
  return fnv1a(bytes);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return v.empty() ? "-" : out.str();
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::string RoundReport::to_line() const {
  std::ostringstream out;
  out.precision(10);
  out << "record=round round=" << round_id << " attempt=" << attempt
      << " verified=" << (verified ? 1 : 0)
      << " participants=" << participants.size()
      << " samples=" << sample_total << " dropped_pre=" << join(dropped_pre)
      << " dropped_post=" << join(dropped_post)
      << " aborted=" << join(aborted_clusters)
      << " device_elements=" << device_elements_total
      << " fog_elements=" << fog_elements_total
      << " cloud_elements=" << cloud_elements
      << " bulletin_elements=" << bulletin_elements
      << " update_max=" << max_abs(update)
      << " theta=" << hex64(theta_hash);
  return out.str();
}

void RoundReport::compact() {
  device_elements = {};
  fog_elements = {};
  cluster_sums = {};
}

std::string OracleComparison::to_line() const {
  std::ostringstream out;
  out.precision(6);
  out << "record=oracle ran=" << (ran ? 1 : 0)
      << " max_round_gap=" << max_round_gap
      << " round_tolerance=" << round_tolerance
      << " final_rel_gap=" << final_rel_gap
      << " final_tolerance=" << final_tolerance
      << " oracle_iterations=" << oracle_iterations
      << " oracle_converged=" << (oracle_converged ? 1 : 0)
      << " pass=" << (ok() ? 1 : 0);
  return out.str();
}

std::vector<std::string> TrainingReport::lines() const {
  std::vector<std::string> out;
  out.push_back(config_line);
  if (!dataset_line.empty()) out.push_back(dataset_line);
  for (const RoundReport& r : rounds) out.push_back(r.to_line());
  {
    std::ostringstream s;
    s << "record=summary status=" << status << " converged=" << (converged ? 1 : 0)
      << " rounds=" << rounds.size() << " accepted=" << accepted
      << " rejected=" << rejected << " theta=" << hex64(theta_hash(theta.theta));
    out.push_back(s.str());
  }
  {
    std::ostringstream s;
    s.precision(10);
    s << "record=theta rows=" << theta.theta.rows()
      << " cols=" << theta.theta.cols() << " values=";
    for (Eigen::Index i = 0; i < theta.theta.size(); ++i) {
      if (i) s << ',';
      s << theta.theta.data()[i];
    }
    out.push_back(s.str());
  }
  if (train_metrics) out.push_back(train_metrics->to_line() + " split=train");
  if (test_metrics) out.push_back(test_metrics->to_line() + " split=test");
  if (oracle.ran) out.push_back(oracle.to_line());
  return out;
}

std::uint64_t TrainingReport::hash() const {
  std::uint64_t h = fnv1a("");
  for (const std::string& line : lines()) {
    h = fnv1a(line, h);
    h = fnv1a("\n", h);
  }
  return h;
}

void TrainingReport::write(std::ostream& out) const {
  for (const std::string& line : lines()) out << line << '\n';
  out << "record=hash value=" << hex64(hash()) << '\n';
  out << "record=timing wall_seconds=" << wall_seconds << '\n';
}

ClosedForms closed_form_elements(std::size_t total_devices,
                                 std::size_t per_cluster, std::size_t fogs,
                                 std::size_t coords, std::size_t outputs,
                                 std::size_t digest) {
  const std::size_t d = coords * outputs;
  return {per_cluster * d, d * (fogs + digest + 1), d * (digest + 1),
          total_devices * d, d};
}

double OverheadTable::device_ratio() const {
  for (const OverheadRow& row : rows) {
    if (row.role == Role::kDevice && row.measured_mean > 0) {
      return static_cast<double>(row.flat) / row.measured_mean;
    }
  }
  return 0.0;
}

bool OverheadTable::matches() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(),
                     [](const OverheadRow& r) { return r.matches(); });
}

std::vector<std::string> OverheadTable::lines() const {
  std::vector<std::string> out;
  for (const OverheadRow& row : rows) {
    std::ostringstream s;
    s.precision(10);
    s << "record=overhead kind=" << to_string(kind) << " N=" << total_devices
      << " n=" << per_cluster << " m=" << fogs << " coords=" << coords
      << " outputs=" << outputs << " role=" << to_string(row.role)
      << " measured_mean=" << row.measured_mean
      << " measured_max=" << row.measured_max
      << " measured_bytes=" << row.measured_max * kElementBytes
      << " closed_form=" << row.closed_form;
    if (row.flat) s << " flat=" << row.flat;
    s << " match=" << (row.matches() ? 1 : 0);
    out.push_back(s.str());
  }
  std::ostringstream s;
  s << "record=overhead_ratio kind=" << to_string(kind)
    << " N=" << total_devices << " n=" << per_cluster
    << " device_ratio=" << device_ratio();
  out.push_back(s.str());
  return out;
}

}  // namespace fogvl
