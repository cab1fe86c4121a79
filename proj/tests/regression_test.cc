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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fogvl/data.h"
#include "fogvl/error.h"
#include "fogvl/regression.h"

namespace fogvl {
namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(Predict, LinearCases) {
  const Matrix x = mat({{1, 2}, {1, 3}});
  EXPECT_EQ(predict_linear({Matrix::Zero(2, 1)}, x), Matrix::Zero(2, 1));
  EXPECT_EQ(predict_linear({mat({{0}, {1}})}, x).col(0), x.col(1));
  const Matrix p = predict_linear({mat({{1}, {2}})}, x);
  EXPECT_EQ(p(0, 0), 5.0);
  EXPECT_EQ(p(1, 0), 7.0);
  EXPECT_THROW(predict_linear({Matrix::Zero(3, 1)}, x), ShapeError);
}

TEST(Predict, LogisticCases) {
  const Matrix x = mat({{1, 0}, {1, std::log(3.0)}, {1, 100}});
  const Matrix zero = predict_logistic({Matrix::Zero(2, 2)}, x);
  EXPECT_TRUE((zero.array() == 0.5).all());
  const Matrix p = predict_logistic({mat({{0}, {1}})}, x);
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_NEAR(p(1, 0), 0.75, 1e-15);
  EXPECT_NEAR(p(2, 0), 1.0, 1e-9);
  const Matrix q = predict_logistic({mat({{0}, {-1}})}, x);
  EXPECT_NEAR(q(2, 0), 0.0, 1e-9);
}

TEST(Gradient, HandCase) {
  const Dataset d{mat({{1, 2}}), mat({{5}})};
  const Matrix g = local_gradient({Matrix::Zero(2, 1)}, d, ModelKind::kLinear);
  EXPECT_EQ(g(0, 0), -5.0);
  EXPECT_EQ(g(1, 0), -10.0);
}

TEST(Gradient, PerfectFitIsZero) {
  const Matrix theta = mat({{1}, {-2}});
  const Matrix x = mat({{1, 0.5}, {1, 3}, {1, -1}});
  const Dataset d{x, x * theta};
  EXPECT_TRUE(local_gradient({theta}, d, ModelKind::kLinear).isZero(0.0));
}

TEST(Gradient, SplitsSumToWhole) {
  const SyntheticDataset s = synth_dataset(3, ModelKind::kLinear, 500, 4, 0.1);
  const ModelParams theta{Matrix::Constant(5, 1, 0.3)};
  const Matrix whole = local_gradient(theta, s.data, ModelKind::kLinear);
  for (std::size_t parts : {2u, 3u, 7u}) {
    Matrix sum = Matrix::Zero(5, 1);
    for (const Dataset& p : partition(s.data, parts, PartitionStrategy::kShuffled, 9)) {
      sum += local_gradient(theta, p, ModelKind::kLinear);
    }
    EXPECT_LT((sum - whole).cwiseAbs().maxCoeff(), 1e-9 * whole.cwiseAbs().maxCoeff());
  }
}

// Central finite differences of the cost against the analytic gradient.
TEST(Gradient, FiniteDifferenceCheck) {
  for (ModelKind kind : {ModelKind::kLinear, ModelKind::kLogistic}) {
    const SyntheticDataset s = synth_dataset(11, kind, 60, 3, 0.5, 3);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 0.3);
    ModelParams theta{Matrix(s.data.features.cols(), s.data.labels.cols())};
    for (Eigen::Index i = 0; i < theta.theta.size(); ++i) theta.theta.data()[i] = n(rng);
    const Matrix g = local_gradient(theta, s.data, kind) /
                     static_cast<double>(s.data.samples());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < theta.theta.size(); ++i) {
      ModelParams up = theta, down = theta;
      up.theta.data()[i] += h;
      down.theta.data()[i] -= h;
      const double fd = (cost(up, s.data, kind) - cost(down, s.data, kind)) / (2 * h);
      EXPECT_NEAR(fd, g.data()[i], 1e-5 * std::max(1.0, std::abs(fd)))
          << to_string(kind) << " " << i;
    }
  }
}

TEST(CentralizedGd, AlphaZeroKeepsTheta) {
  const SyntheticDataset s = synth_dataset(1, ModelKind::kLinear, 50, 2, 0.1);
  const GdResult r = centralized_gd(s.data, {0.0, 25, 0.0}, ModelKind::kLinear);
  EXPECT_TRUE(r.params.theta.isZero(0.0));
}

TEST(CentralizedGd, RecoversSlopeOfLine) {
  Matrix raw(21, 1);
  for (int i = 0; i < 21; ++i) raw(i, 0) = -1.0 + 0.1 * i;
  const Dataset d = Dataset::from_raw(raw, 2.0 * raw);
  const GdResult r = centralized_gd(d, {0.5, 100000, 1e-12}, ModelKind::kLinear);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.params.theta(1, 0), 2.0, 1e-3);
  EXPECT_NEAR(r.params.theta(0, 0), 0.0, 1e-3);
}

TEST(CentralizedGd, MatchesLeastSquares) {
  const SyntheticDataset s = synth_dataset(21, ModelKind::kLinear, 400, 4, 0.3);
  const GdResult r = centralized_gd(s.data, {0.5, 100000, 1e-12}, ModelKind::kLinear);
  const Matrix ls = s.data.features.colPivHouseholderQr().solve(s.data.labels);
  EXPECT_LT((r.params.theta - ls).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CentralizedGd, CostIsMonotone) {
  const SyntheticDataset s = synth_dataset(8, ModelKind::kLogistic, 300, 4, 0.5, 3);
  ModelParams theta = ModelParams::zeros(4, 3);
  double prev = cost(theta, s.data, ModelKind::kLogistic);
  for (int it = 0; it < 200; ++it) {
    theta = gd_step(theta, s.data, 0.1, ModelKind::kLogistic);
    const double c = cost(theta, s.data, ModelKind::kLogistic);
    EXPECT_LE(c, prev + 1e-12) << it;
    prev = c;
  }
}

TEST(CentralizedGd, DivergenceThrows) {
  const SyntheticDataset s = synth_dataset(2, ModelKind::kLinear, 100, 3, 0.1);
  EXPECT_THROW(centralized_gd(s.data, {50.0, 10000, 1e-9}, ModelKind::kLinear),
               DivergenceError);
}

TEST(CentralizedGd, EmptyDataThrows) {
  EXPECT_THROW(centralized_gd({}, {}, ModelKind::kLinear), DataError);
}

TEST(Metrics, PerfectAndMeanPredictors) {
  const Matrix x = mat({{1, 1}, {1, 2}, {1, 3}, {1, 4}});
  const Dataset d{x, x * mat({{1}, {2}})};
  const MetricsReport perfect = eval_metrics({mat({{1}, {2}})}, d, ModelKind::kLinear);
  EXPECT_EQ(perfect.rmse, 0.0);
  EXPECT_EQ(perfect.r2, 1.0);
  const double mean = d.labels.mean();
  const MetricsReport flat = eval_metrics({mat({{mean}, {0}})}, d, ModelKind::kLinear);
  EXPECT_NEAR(flat.r2, 0.0, 1e-12);
  const Dataset constant{x, Matrix::Constant(4, 1, 3.0)};
  EXPECT_THROW(eval_metrics({mat({{0}, {0}})}, constant, ModelKind::kLinear), DataError);
  EXPECT_THROW(eval_metrics({mat({{0}, {0}})}, Dataset{}, ModelKind::kLinear), DataError);
}

TEST(Metrics, AccuracyOneVsRest) {
  const Matrix x = mat({{1, -2}, {1, 0}, {1, 2}});
  const Matrix labels = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const Matrix theta = mat({{0, 1, 0}, {-1, 0, 1}});
  const MetricsReport r = eval_metrics({theta}, {x, labels}, ModelKind::kLogistic);
  EXPECT_EQ(r.accuracy, 100.0);
  const Matrix wrong = mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  EXPECT_NEAR(eval_metrics({theta}, {x, wrong}, ModelKind::kLogistic).accuracy,
              100.0 / 3, 1e-12);
}

TEST(Metrics, LineFormat) {
  MetricsReport r;
  r.kind = ModelKind::kLinear;
  r.samples = 3;
  r.rmse = 0.5;
  r.r2 = 0.75;
  EXPECT_EQ(r.to_line(), "record=metrics kind=linear samples=3 rmse=0.5 r2=0.75");
}

}  // namespace
}  // namespace fogvl
