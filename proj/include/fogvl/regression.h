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

#ifndef FOGVL_REGRESSION_H_
#define FOGVL_REGRESSION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "fogvl/types.h"

namespace fogvl {

// Samples as rows. Column 0 of `features` is the bias column of ones;
// columns 1..k are the k input features. `labels` is samples x l (l = 1
// for linear regression, one-hot over c classes for OVR logistic).
struct Dataset {
  Matrix features;
  Matrix labels;

  std::size_t samples() const { return static_cast<std::size_t>(features.rows()); }
  // k, excluding the bias column.
  std::size_t feature_count() const {
    return features.cols() == 0 ? 0 : static_cast<std::size_t>(features.cols() - 1);
  }
  std::size_t outputs() const { return static_cast<std::size_t>(labels.cols()); }
  bool empty() const { return features.rows() == 0; }

  // Prepends the bias column to raw features.
  static Dataset from_raw(const Matrix& raw_features, Matrix labels);
  // Rows [begin, end).
  Dataset slice(std::size_t begin, std::size_t end) const;
  Dataset select(const std::vector<std::size_t>& rows) const;
};

struct ModelParams {
  Matrix theta;  // (k + 1) x l

  static ModelParams zeros(std::size_t features, std::size_t outputs);
  std::size_t outputs() const { return static_cast<std::size_t>(theta.cols()); }
  bool finite() const { return theta.allFinite(); }
};

struct Hyperparams {
  double alpha = 0.5;
  std::size_t max_iters = 10000;
  double tol = 1e-6;  // on the infinity norm of the parameter update

  void validate() const;
};

Matrix predict_linear(const ModelParams& params, const Matrix& x);
// Per-class sigmoid probabilities.
Matrix predict_logistic(const ModelParams& params, const Matrix& x);
// Argmax over columns of the OVR scores.
std::vector<std::size_t> predict_classes(const ModelParams& params,
                                         const Matrix& x);

// Unscaled sum over samples of (h(x) - y) x, shaped like theta.
Matrix local_gradient(const ModelParams& params, const Dataset& data,
                      ModelKind kind);

// theta - (alpha / samples) * local_gradient.
ModelParams gd_step(const ModelParams& params, const Dataset& data,
                    double alpha, ModelKind kind);

// 1/(2m) sum (h - y)^2 for linear; mean cross-entropy summed over classes
// for logistic.
double cost(const ModelParams& params, const Dataset& data, ModelKind kind);

struct GdResult {
  ModelParams params;
  std::size_t iterations = 0;
  bool converged = false;
};

// Full-batch gradient descent from zeros until the update's infinity norm
// drops below tol or max_iters. Throws DivergenceError on non-finite
// parameters.
GdResult centralized_gd(const Dataset& data, const Hyperparams& hp,
                        ModelKind kind);

struct MetricsReport {
  ModelKind kind = ModelKind::kLinear;
  std::size_t samples = 0;
  double rmse = 0.0;
  double r2 = 0.0;
  double accuracy = 0.0;  // percent

  // One line of key=value pairs.
  std::string to_line() const;
};

// Throws DataError on an empty set, or for linear models when the label
// variance is zero (R2 undefined).
MetricsReport eval_metrics(const ModelParams& params, const Dataset& test,
                           ModelKind kind);

}  // namespace fogvl

#endif  // FOGVL_REGRESSION_H_
