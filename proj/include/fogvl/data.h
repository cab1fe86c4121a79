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

// Dataset loading, normalization, splitting and partitioning.

#ifndef FOGVL_DATA_H_
#define FOGVL_DATA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fogvl/regression.h"

namespace fogvl {

inline constexpr std::size_t kCcppRows = 9568;
inline constexpr std::size_t kTelemetryFeatures = 30;
inline constexpr std::size_t kTelemetryClasses = 5;

// Comma-separated, dot decimal, header row required.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws DataError when the column is absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

// Columns AT, V, AP, RH (features) and PE (label), in any order. A row
// count other than 9568 appends a warning. Throws DataError on missing
// columns, non-numeric cells or an empty table.
Dataset load_ccpp(const std::filesystem::path& path,
                  std::vector<std::string>* warnings = nullptr);
Dataset load_ccpp(std::istream& in,
                  std::vector<std::string>* warnings = nullptr);

// Prepared predictive-maintenance table: a `failure` label column with
// values none/comp1..comp4, optional `machineID` and `datetime`
// identifier columns, and exactly 30 numeric feature columns. Labels are
// one-hot over the five classes. `max_rows` > 0 keeps a seeded subsample
// of that many rows, in file order.
Dataset load_telemetry(const std::filesystem::path& path,
                       std::size_t max_rows = 0, std::uint64_t seed = 0);
Dataset load_telemetry(std::istream& in, std::size_t max_rows = 0,
                       std::uint64_t seed = 0);

// Index of a telemetry class name; throws DataError on unknown names.
std::size_t telemetry_class(const std::string& name);

struct SyntheticDataset {
  Dataset data;
  Matrix true_theta;  // (features + 1) x outputs
};

// Linear: x ~ N(0, 1), y = [1 x] theta* + noise * N(0, 1).
// Logistic: one-hot of argmax_c([1 x] theta*_c + noise * N(0, 1)).
SyntheticDataset synth_dataset(std::uint64_t seed, ModelKind kind,
                               std::size_t samples, std::size_t features,
                               double noise, std::size_t classes = 5);

// Per-feature standardization learned on one dataset and reusable on
// others. Zero-variance columns are dropped.
struct NormalizationTransform {
  std::vector<std::size_t> kept;  // raw feature indices (0-based, no bias)
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<std::string> warnings;

  Dataset apply(const Dataset& ds) const;
};

NormalizationTransform fit_normalization(const Dataset& ds);

struct NormalizedDataset {
  Dataset data;
  NormalizationTransform transform;
};

NormalizedDataset normalize(const Dataset& ds);

enum class PartitionStrategy { kContiguous, kShuffled };

// Disjoint exact cover of the rows across `parts` datasets. Throws
// DataError when parts exceeds the sample count or is zero.
std::vector<Dataset> partition(const Dataset& ds, std::size_t parts,
                               PartitionStrategy strategy,
                               std::uint64_t seed = 0);

// Contiguous blocks sized by `fractions` (normalized to sum 1); every
// part gets at least one row.
std::vector<Dataset> partition_weighted(const Dataset& ds,
                                        const std::vector<double>& fractions);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

TrainTestSplit train_test_split(const Dataset& ds, double test_fraction,
                                std::uint64_t seed);

// Seeded subsample without replacement, rows kept in original order.
Dataset subsample(const Dataset& ds, std::size_t rows, std::uint64_t seed);

}  // namespace fogvl

#endif  // FOGVL_DATA_H_
