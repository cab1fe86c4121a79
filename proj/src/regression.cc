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

#include "fogvl/regression.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fogvl/error.h"
#include "fogvl/kernels.h"

namespace fogvl {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kLinear ? "linear" : "logistic";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "linear") return ModelKind::kLinear;
  if (s == "logistic") return ModelKind::kLogistic;
  throw ConfigError("unknown model kind '" + std::string(s) + "'");
}

Dataset Dataset::from_raw(const Matrix& raw_features, Matrix labels) {
  if (raw_features.rows() != labels.rows()) {
    throw ShapeError("features and labels differ in row count");
  }
  Dataset ds;
  ds.features.resize(raw_features.rows(), raw_features.cols() + 1);
  ds.features.col(0).setOnes();
  ds.features.rightCols(raw_features.cols()) = raw_features;
  ds.labels = std::move(labels);
  return ds;
}

Dataset Dataset::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > samples()) throw ShapeError("slice out of range");
  const auto b = static_cast<Eigen::Index>(begin);
  const auto n = static_cast<Eigen::Index>(end - begin);
  return {features.middleRows(b, n), labels.middleRows(b, n)};
}

Dataset Dataset::select(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()), labels.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= samples()) throw ShapeError("row index out of range");
    const auto dst = static_cast<Eigen::Index>(i);
    const auto src = static_cast<Eigen::Index>(rows[i]);
    out.features.row(dst) = features.row(src);
    out.labels.row(dst) = labels.row(src);
  }
  return out;
}

ModelParams ModelParams::zeros(std::size_t features, std::size_t outputs) {
  return {Matrix::Zero(static_cast<Eigen::Index>(features + 1),
                       static_cast<Eigen::Index>(outputs))};
}

void Hyperparams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("learning rate must be finite and non-negative");
  }
  if (!(tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
}

namespace {

void check_predict_shapes(const ModelParams& params, const Matrix& x) {
  if (x.cols() != params.theta.rows()) {
    throw ShapeError("X has " + std::to_string(x.cols()) +
                     " columns, theta has " +
                     std::to_string(params.theta.rows()) + " rows");
  }
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Matrix predict_linear(const ModelParams& params, const Matrix& x) {
  check_predict_shapes(params, x);
  return x * params.theta;
}

Matrix predict_logistic(const ModelParams& params, const Matrix& x) {
  check_predict_shapes(params, x);
  Matrix z = x * params.theta;
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

std::vector<std::size_t> predict_classes(const ModelParams& params,
                                         const Matrix& x) {
  check_predict_shapes(params, x);
  const Matrix z = x * params.theta;
  std::vector<std::size_t> out(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    if (z.cols() == 1) {  // binary: positive class iff p >= 0.5
      out[static_cast<std::size_t>(i)] = z(i, 0) >= 0.0 ? 1 : 0;
      continue;
    }
    Eigen::Index best = 0;
    z.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
  }
  return out;
}

Matrix local_gradient(const ModelParams& params, const Dataset& data,
                      ModelKind kind) {
  return kernels::gradient(data.features, data.labels, params.theta, kind);
}

ModelParams gd_step(const ModelParams& params, const Dataset& data,
                    double alpha, ModelKind kind) {
  if (data.empty()) throw DataError("gradient step on an empty dataset");
  const Matrix grad = local_gradient(params, data, kind);
  return {params.theta - (alpha / static_cast<double>(data.samples())) * grad};
}

double cost(const ModelParams& params, const Dataset& data, ModelKind kind) {
  if (data.empty()) throw DataError("cost of an empty dataset");
  const double m = static_cast<double>(data.samples());
  if (kind == ModelKind::kLinear) {
    const Matrix r = predict_linear(params, data.features) - data.labels;
    return r.squaredNorm() / (2.0 * m);
  }
  const Matrix p = predict_logistic(params, data.features);
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double pc = std::clamp(p(i, c), 1e-15, 1.0 - 1e-15);
      const double y = data.labels(i, c);
      total -= y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc);
    }
  }
  return total / m;
}

GdResult centralized_gd(const Dataset& data, const Hyperparams& hp,
                        ModelKind kind) {
  hp.validate();
  if (data.empty()) throw DataError("training on an empty dataset");
  GdResult result{ModelParams::zeros(data.feature_count(), data.outputs()), 0,
                  false};
  for (std::size_t it = 0; it < hp.max_iters; ++it) {
    ModelParams next = gd_step(result.params, data, hp.alpha, kind);
    if (!next.finite()) {
      throw DivergenceError("gradient descent diverged at iteration " +
                            std::to_string(it + 1));
    }
    const double step = (next.theta - result.params.theta).cwiseAbs().maxCoeff();
    result.params = std::move(next);
    result.iterations = it + 1;
    if (step < hp.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::string MetricsReport::to_line() const {
  std::ostringstream out;
  out.precision(10);
  out << "record=metrics kind=" << to_string(kind) << " samples=" << samples;
  if (kind == ModelKind::kLinear) {
    out << " rmse=" << rmse << " r2=" << r2;
  } else {
    out << " accuracy=" << accuracy;
  }
  return out.str();
}

MetricsReport eval_metrics(const ModelParams& params, const Dataset& test,
                           ModelKind kind) {
  if (test.empty()) throw DataError("metrics over an empty test set");
  MetricsReport report;
  report.kind = kind;
  report.samples = test.samples();
  if (kind == ModelKind::kLinear) {
    const Matrix pred = predict_linear(params, test.features);
    const double n = static_cast<double>(test.samples()) *
                     static_cast<double>(test.labels.cols());
    const double ss_res = (pred - test.labels).squaredNorm();
    const double mean = test.labels.mean();
    const double ss_tot = (test.labels.array() - mean).matrix().squaredNorm();
    if (ss_tot == 0.0) {
      throw DataError("R2 is undefined for constant labels");
    }
    report.rmse = std::sqrt(ss_res / n);
    report.r2 = 1.0 - ss_res / ss_tot;
    return report;
  }
  const std::vector<std::size_t> pred = predict_classes(params, test.features);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    Eigen::Index truth = 0;
    if (test.labels.cols() == 1) {
      truth = test.labels(static_cast<Eigen::Index>(i), 0) >= 0.5 ? 1 : 0;
    } else {
      test.labels.row(static_cast<Eigen::Index>(i)).maxCoeff(&truth);
    }
    if (static_cast<std::size_t>(truth) == pred[i]) ++correct;
  }
  report.accuracy =
      100.0 * static_cast<double>(correct) / static_cast<double>(pred.size());
  return report;
}

}  // namespace fogvl
