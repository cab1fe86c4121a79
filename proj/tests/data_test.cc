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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fogvl/data.h"
#include "fogvl/error.h"

namespace fogvl {
namespace {

std::string telemetry_csv(std::size_t rows) {
  std::ostringstream out;
  out << "datetime,machineID";
  for (std::size_t j = 0; j < kTelemetryFeatures; ++j) out << ",f" << j;
  out << ",failure\n";
  const char* classes[] = {"none", "comp1", "comp2", "comp3", "comp4"};
  for (std::size_t i = 0; i < rows; ++i) {
    out << "2015-01-01 06:00:00," << (i % 7);
    for (std::size_t j = 0; j < kTelemetryFeatures; ++j) {
      out << ',' << static_cast<double>((i * 31 + j * 17) % 101) / 10.0;
    }
    out << ',' << classes[i % 5] << '\n';
  }
  return out.str();
}

// Rows as tuples so partitions can be compared as sets.
std::multiset<std::vector<double>> row_set(const Dataset& ds) {
  std::multiset<std::vector<double>> out;
  for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
    std::vector<double> row(ds.features.row(i).begin(), ds.features.row(i).end());
    for (Eigen::Index c = 0; c < ds.labels.cols(); ++c) row.push_back(ds.labels(i, c));
    out.insert(row);
  }
  return out;
}

TEST(Ccpp, LoadsColumnsInAnyOrder) {
  std::istringstream in("PE,RH,AP,V,AT\n480.5,70,1010,40,15\n450,60,1012,45.5,25\n");
  std::vector<std::string> warnings;
  const Dataset d = load_ccpp(in, &warnings);
  ASSERT_EQ(d.samples(), 2u);
  ASSERT_EQ(d.feature_count(), 4u);
  EXPECT_EQ(d.features(0, 0), 1.0);
  EXPECT_EQ(d.features(0, 1), 15.0);   // AT
  EXPECT_EQ(d.features(0, 2), 40.0);   // V
  EXPECT_EQ(d.features(0, 3), 1010.0); // AP
  EXPECT_EQ(d.features(0, 4), 70.0);   // RH
  EXPECT_EQ(d.labels(1, 0), 450.0);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("9568"), std::string::npos);
}

TEST(Ccpp, Errors) {
  std::istringstream missing("AT,V,AP,PE\n1,2,3,4\n");
  EXPECT_THROW(load_ccpp(missing), DataError);
  std::istringstream bad("AT,V,AP,RH,PE\n1,2,x,4,5\n");
  EXPECT_THROW(load_ccpp(bad), DataError);
  std::istringstream empty("AT,V,AP,RH,PE\n");
  EXPECT_THROW(load_ccpp(empty), DataError);
  EXPECT_THROW(load_ccpp(std::filesystem::path("/nonexistent/ccpp.csv")), DataError);
}

TEST(Telemetry, OneHotLabels) {
  std::istringstream in(telemetry_csv(20));
  const Dataset d = load_telemetry(in);
  EXPECT_EQ(d.samples(), 20u);
  EXPECT_EQ(d.feature_count(), kTelemetryFeatures);
  EXPECT_EQ(d.outputs(), kTelemetryClasses);
  for (Eigen::Index i = 0; i < 20; ++i) {
    EXPECT_EQ(d.labels.row(i).sum(), 1.0);
    EXPECT_EQ(d.labels(i, i % 5), 1.0);
  }
}

TEST(Telemetry, SeededSubsample) {
  std::istringstream a(telemetry_csv(50)), b(telemetry_csv(50));
  const Dataset x = load_telemetry(a, 10, 3);
  const Dataset y = load_telemetry(b, 10, 3);
  EXPECT_EQ(x.samples(), 10u);
  EXPECT_EQ(x.features, y.features);
}

TEST(Telemetry, Errors) {
  EXPECT_THROW(telemetry_class("comp9"), DataError);
  std::istringstream narrow("f0,failure\n1,none\n");
  EXPECT_THROW(load_telemetry(narrow), DataError);
}

TEST(Synthetic, DeterministicWithShapes) {
  const SyntheticDataset a = synth_dataset(4, ModelKind::kLogistic, 100, 3, 0.2, 4);
  const SyntheticDataset b = synth_dataset(4, ModelKind::kLogistic, 100, 3, 0.2, 4);
  EXPECT_EQ(a.data.features, b.data.features);
  EXPECT_EQ(a.data.labels, b.data.labels);
  EXPECT_EQ(a.true_theta.rows(), 4);
  EXPECT_EQ(a.true_theta.cols(), 4);
  EXPECT_TRUE((a.data.labels.rowwise().sum().array() == 1.0).all());
  const SyntheticDataset clean = synth_dataset(4, ModelKind::kLinear, 30, 3, 0.0);
  EXPECT_LT((clean.data.features * clean.true_theta - clean.data.labels)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(Normalize, ZeroMeanUnitVarianceAndIdempotent) {
  const SyntheticDataset s = synth_dataset(5, ModelKind::kLinear, 200, 3, 0.1);
  Dataset shifted = s.data;
  shifted.features.col(2).array() = shifted.features.col(2).array() * 7.0 + 40.0;
  const NormalizedDataset n = normalize(shifted);
  for (Eigen::Index j = 1; j < n.data.features.cols(); ++j) {
    const auto col = n.data.features.col(j).array();
    EXPECT_NEAR(col.mean(), 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt((col - col.mean()).square().mean()), 1.0, 1e-12);
  }
  const NormalizedDataset twice = normalize(n.data);
  EXPECT_LT((twice.data.features - n.data.features).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Normalize, DropsConstantColumns) {
  const SyntheticDataset s = synth_dataset(5, ModelKind::kLinear, 50, 3, 0.1);
  Dataset d = s.data;
  d.features.col(2).setConstant(4.0);
  const NormalizedDataset n = normalize(d);
  EXPECT_EQ(n.data.feature_count(), 2u);
  EXPECT_EQ(n.transform.kept, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(n.transform.warnings.size(), 1u);
  EXPECT_EQ(n.transform.apply(d).features, n.data.features);
}

TEST(Partition, DisjointExactCover) {
  const SyntheticDataset s = synth_dataset(6, ModelKind::kLinear, 103, 2, 0.1);
  const auto all = row_set(s.data);
  for (auto strategy : {PartitionStrategy::kContiguous, PartitionStrategy::kShuffled}) {
    for (std::size_t parts : {1u, 4u, 10u, 103u}) {
      for (std::uint64_t seed : {0u, 1u, 2u}) {
        const auto split = partition(s.data, parts, strategy, seed);
        ASSERT_EQ(split.size(), parts);
        std::size_t total = 0;
        std::multiset<std::vector<double>> joined;
        for (const Dataset& p : split) {
          EXPECT_GE(p.samples(), 1u);
          total += p.samples();
          for (const auto& r : row_set(p)) joined.insert(r);
        }
        EXPECT_EQ(total, s.data.samples());
        EXPECT_EQ(joined, all);
      }
    }
  }
  EXPECT_THROW(partition(s.data, 0, PartitionStrategy::kContiguous), DataError);
  EXPECT_THROW(partition(s.data, 104, PartitionStrategy::kContiguous), DataError);
}

TEST(Partition, Weighted) {
  const SyntheticDataset s = synth_dataset(6, ModelKind::kLinear, 100, 2, 0.1);
  const auto split = partition_weighted(s.data, {0.6, 0.4});
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split[0].samples(), 60u);
  EXPECT_EQ(split[1].samples(), 40u);
  EXPECT_THROW(partition_weighted(s.data, {1.0, 0.0}), DataError);
}

TEST(Split, SizesAndDeterminism) {
  const SyntheticDataset s = synth_dataset(7, ModelKind::kLinear, 1000, 2, 0.1);
  const TrainTestSplit a = train_test_split(s.data, 0.2, 42);
  const TrainTestSplit b = train_test_split(s.data, 0.2, 42);
  EXPECT_EQ(a.train.samples(), 800u);
  EXPECT_EQ(a.test.samples(), 200u);
  EXPECT_EQ(a.test.features, b.test.features);
  auto joined = row_set(a.train);
  for (const auto& r : row_set(a.test)) joined.insert(r);
  EXPECT_EQ(joined, row_set(s.data));
  EXPECT_THROW(train_test_split(s.data, 1.0, 1), DataError);
}

TEST(Subsample, KeepsOrderAndSize) {
  const SyntheticDataset s = synth_dataset(8, ModelKind::kLinear, 100, 1, 0.1);
  const Dataset sub = subsample(s.data, 30, 1);
  EXPECT_EQ(sub.samples(), 30u);
  EXPECT_EQ(subsample(s.data, 500, 1).samples(), 100u);
}

TEST(Csv, QuotedHeaderAndBlankLines) {
  std::istringstream in("\"AT\",V,AP,RH,PE\n\n1,2,3,4,5\n");
  const Dataset d = load_ccpp(in);
  EXPECT_EQ(d.samples(), 1u);
}

}  // namespace
}  // namespace fogvl
