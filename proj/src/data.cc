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

#include "fogvl/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

#include "fogvl/error.h"

namespace fogvl {
namespace {

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string_view rest(line);
  while (true) {
    const auto comma = rest.find(',');
    cells.push_back(strip(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t row,
                    const std::string& column) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DataError("row " + std::to_string(row + 1) + ", column " + column +
                    ": '" + cell + "' is not a number");
  }
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || strip(line).empty()) {
    throw DataError("CSV has no header row");
  }
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw DataError("CSV row " + std::to_string(table.rows.size() + 1) +
                      " has " + std::to_string(cells.size()) +
                      " cells, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_csv(in);
}

Dataset load_ccpp(std::istream& in, std::vector<std::string>* warnings) {
  const CsvTable table = read_csv(in);
  const std::vector<std::string> feature_names = {"AT", "V", "AP", "RH"};
  std::vector<std::size_t> cols;
  for (const auto& name : feature_names) cols.push_back(table.column(name));
  const std::size_t label_col = table.column("PE");
  if (table.rows.empty()) throw DataError("CCPP table has no data rows");

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  Matrix raw(n, static_cast<Eigen::Index>(cols.size()));
  Matrix labels(n, 1);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_number(row[cols[j]], i, feature_names[j]);
    }
    labels(static_cast<Eigen::Index>(i), 0) =
        parse_number(row[label_col], i, "PE");
  }
  if (table.rows.size() != kCcppRows && warnings != nullptr) {
    warnings->push_back("CCPP: expected " + std::to_string(kCcppRows) +
                        " rows, found " + std::to_string(table.rows.size()));
  }
  return Dataset::from_raw(raw, std::move(labels));
}

Dataset load_ccpp(const std::filesystem::path& path,
                  std::vector<std::string>* warnings) {
  auto in = open_or_throw(path);
  return load_ccpp(in, warnings);
}

std::size_t telemetry_class(const std::string& name) {
  static const std::vector<std::string> kNames = {"none", "comp1", "comp2",
                                                  "comp3", "comp4"};
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) {
    throw DataError("unknown failure class '" + name + "'");
  }
  return static_cast<std::size_t>(it - kNames.begin());
}

Dataset load_telemetry(std::istream& in, std::size_t max_rows,
                       std::uint64_t seed) {
  const CsvTable table = read_csv(in);
  const std::size_t label_col = table.column("failure");
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& h = table.header[c];
    if (c == label_col || h == "machineID" || h == "datetime") continue;
    feature_cols.push_back(c);
  }
  if (feature_cols.size() != kTelemetryFeatures) {
    throw DataError("telemetry table needs " +
                    std::to_string(kTelemetryFeatures) +
                    " feature columns, found " +
                    std::to_string(feature_cols.size()));
  }
  if (table.rows.empty()) throw DataError("telemetry table has no data rows");

  std::vector<std::size_t> rows(table.rows.size());
  std::iota(rows.begin(), rows.end(), 0);
  if (max_rows > 0 && max_rows < rows.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(max_rows);
    std::sort(rows.begin(), rows.end());
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix raw(n, static_cast<Eigen::Index>(feature_cols.size()));
  Matrix labels = Matrix::Zero(n, kTelemetryClasses);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = table.rows[rows[i]];
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_number(row[feature_cols[j]], rows[i],
                       table.header[feature_cols[j]]);
    }
    labels(static_cast<Eigen::Index>(i),
           static_cast<Eigen::Index>(telemetry_class(row[label_col]))) = 1.0;
  }
  return Dataset::from_raw(raw, std::move(labels));
}

Dataset load_telemetry(const std::filesystem::path& path, std::size_t max_rows,
                       std::uint64_t seed) {
  auto in = open_or_throw(path);
  return load_telemetry(in, max_rows, seed);
}

SyntheticDataset synth_dataset(std::uint64_t seed, ModelKind kind,
                               std::size_t samples, std::size_t features,
                               double noise, std::size_t classes) {
  if (samples == 0 || features == 0) {
    throw DataError("synthetic dataset needs samples and features");
  }
  const std::size_t outputs = kind == ModelKind::kLinear ? 1 : classes;
  if (outputs == 0) throw DataError("logistic dataset needs classes");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);

  const auto n = static_cast<Eigen::Index>(samples);
  const auto k = static_cast<Eigen::Index>(features);
  const auto l = static_cast<Eigen::Index>(outputs);
  Matrix theta(k + 1, l);
  for (Eigen::Index j = 0; j <= k; ++j) {
    for (Eigen::Index c = 0; c < l; ++c) {
      theta(j, c) = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);
    }
  }
  Matrix raw(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) raw(i, j) = normal(rng);
  }
  Dataset ds = Dataset::from_raw(raw, Matrix::Zero(n, l));
  const Matrix scores = ds.features * theta;
  if (kind == ModelKind::kLinear) {
    for (Eigen::Index i = 0; i < n; ++i) {
      ds.labels(i, 0) = scores(i, 0) + noise * normal(rng);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      double best_score = -INFINITY;
      for (Eigen::Index c = 0; c < l; ++c) {
        const double s = scores(i, c) + noise * normal(rng);
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      if (l == 1) {
        ds.labels(i, 0) = best_score >= 0.0 ? 1.0 : 0.0;
      } else {
        ds.labels(i, best) = 1.0;
      }
    }
  }
  return {std::move(ds), std::move(theta)};
}

Dataset NormalizationTransform::apply(const Dataset& ds) const {
  Dataset out;
  const Eigen::Index n = ds.features.rows();
  out.features.resize(n, static_cast<Eigen::Index>(kept.size() + 1));
  out.features.col(0).setOnes();
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto src = static_cast<Eigen::Index>(kept[j] + 1);
    if (src >= ds.features.cols()) {
      throw ShapeError("normalization fitted on a wider dataset");
    }
    out.features.col(static_cast<Eigen::Index>(j + 1)) =
        (ds.features.col(src).array() - mean[j]) / stddev[j];
  }
  out.labels = ds.labels;
  return out;
}

NormalizationTransform fit_normalization(const Dataset& ds) {
  if (ds.empty()) throw DataError("cannot normalize an empty dataset");
  NormalizationTransform t;
  const double n = static_cast<double>(ds.samples());
  for (std::size_t j = 0; j < ds.feature_count(); ++j) {
    const auto col = ds.features.col(static_cast<Eigen::Index>(j + 1));
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / n;
    if (!(var > 0.0)) {
      t.warnings.push_back("dropping zero-variance feature column " +
                           std::to_string(j));
      continue;
    }
    t.kept.push_back(j);
    t.mean.push_back(mean);
    t.stddev.push_back(std::sqrt(var));
  }
  return t;
}

NormalizedDataset normalize(const Dataset& ds) {
  NormalizationTransform t = fit_normalization(ds);
  Dataset data = t.apply(ds);
  return {std::move(data), std::move(t)};
}

std::vector<Dataset> partition(const Dataset& ds, std::size_t parts,
                               PartitionStrategy strategy,
                               std::uint64_t seed) {
  if (parts == 0) throw DataError("cannot partition into zero parts");
  if (parts > ds.samples()) {
    throw DataError("cannot partition " + std::to_string(ds.samples()) +
                    " samples across " + std::to_string(parts) + " devices");
  }
  std::vector<std::size_t> order(ds.samples());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == PartitionStrategy::kShuffled) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Dataset> out;
  out.reserve(parts);
  const std::size_t base = ds.samples() / parts;
  const std::size_t extra = ds.samples() % parts;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t size = base + (p < extra ? 1 : 0);
    std::vector<std::size_t> rows(order.begin() + begin,
                                  order.begin() + begin + size);
    out.push_back(ds.select(rows));
    begin += size;
  }
  return out;
}

std::vector<Dataset> partition_weighted(const Dataset& ds,
                                        const std::vector<double>& fractions) {
  if (fractions.empty() || fractions.size() > ds.samples()) {
    throw DataError("invalid weighted partition");
  }
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw DataError("partition fractions must be positive");
    total += f;
  }
  std::vector<Dataset> out;
  std::size_t begin = 0;
  double cumulative = 0.0;
  for (std::size_t p = 0; p < fractions.size(); ++p) {
    cumulative += fractions[p];
    std::size_t end =
        p + 1 == fractions.size()
            ? ds.samples()
            : static_cast<std::size_t>(
                  std::llround(cumulative / total * static_cast<double>(ds.samples())));
    const std::size_t remaining_parts = fractions.size() - p - 1;
    end = std::clamp(end, begin + 1, ds.samples() - remaining_parts);
    out.push_back(ds.slice(begin, end));
    begin = end;
  }
  return out;
}

TrainTestSplit train_test_split(const Dataset& ds, double test_fraction,
                                std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DataError("test fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(ds.samples());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto test_size = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(ds.samples())));
  std::vector<std::size_t> test(order.begin(), order.begin() + test_size);
  std::vector<std::size_t> train(order.begin() + test_size, order.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {ds.select(train), ds.select(test)};
}

Dataset subsample(const Dataset& ds, std::size_t rows, std::uint64_t seed) {
  if (rows >= ds.samples()) return ds;
  std::vector<std::size_t> order(ds.samples());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(rows);
  std::sort(order.begin(), order.end());
  return ds.select(order);
}

}  // namespace fogvl
