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

#include "fogvl/kernels.h"

#include <omp.h>

#include <atomic>
#include <cmath>

#include "fogvl/error.h"

namespace fogvl::kernels {
namespace {

std::atomic<bool> g_parallel{true};

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_gradient_shapes(const Matrix& x, const Matrix& y,
                           const Matrix& theta) {
  if (x.cols() != theta.rows() || y.rows() != x.rows() ||
      y.cols() != theta.cols()) {
    throw ShapeError("gradient: X is " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + ", Y is " +
                     std::to_string(y.rows()) + "x" +
                     std::to_string(y.cols()) + ", theta is " +
                     std::to_string(theta.rows()) + "x" +
                     std::to_string(theta.cols()));
  }
}

// h(x_i) - y_i for one sample, written into `out` (length = classes).
void residual_row(const Matrix& x, const Matrix& y, const Matrix& theta,
                  ModelKind kind, Eigen::Index i, double* out) {
  const Eigen::Index features = x.cols();
  for (Eigen::Index c = 0; c < theta.cols(); ++c) {
    double z = 0.0;
    for (Eigen::Index j = 0; j < features; ++j) z += x(i, j) * theta(j, c);
    const double h = kind == ModelKind::kLogistic ? sigmoid(z) : z;
    out[c] = h - y(i, c);
  }
}

FieldElement horner(const PrimeField& field, const PolynomialTable& table,
                    std::size_t w, FieldElement point) {
  FieldElement acc = field.zero();
  for (std::size_t k = table.terms; k-- > 0;) {
    acc = field.add(field.mul(acc, point), table.at(w, k));
  }
  return acc;
}

void check_rows(std::span<const FieldElement> weights,
                std::span<const std::span<const FieldElement>> rows) {
  if (weights.size() != rows.size()) {
    throw MismatchError("weighted_sum: weight/row count mismatch");
  }
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) {
      throw MismatchError("weighted_sum: ragged rows");
    }
  }
}

}  // namespace

namespace serial {

Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind) {
  check_gradient_shapes(x, y, theta);
  Matrix grad = Matrix::Zero(theta.rows(), theta.cols());
  std::vector<double> r(static_cast<std::size_t>(theta.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    residual_row(x, y, theta, kind, i, r.data());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      for (Eigen::Index c = 0; c < theta.cols(); ++c) {
        grad(j, c) += x(i, j) * r[c];
      }
    }
  }
  return grad;
}

std::vector<FieldElement> evaluate_shares(
    const PrimeField& field, const PolynomialTable& table,
    std::span<const FieldElement> points) {
  std::vector<FieldElement> out(points.size() * table.coordinates);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t w = 0; w < table.coordinates; ++w) {
      out[j * table.coordinates + w] = horner(field, table, w, points[j]);
    }
  }
  return out;
}

std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows) {
  check_rows(weights, rows);
  const std::size_t d = rows.empty() ? 0 : rows.front().size();
  std::vector<FieldElement> out(d, field.zero());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t w = 0; w < d; ++w) {
      out[w] = field.add(out[w], field.mul(weights[j], rows[j][w]));
    }
  }
  return out;
}

std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values) {
  std::vector<GroupElement> out(values.size());
  for (std::size_t w = 0; w < values.size(); ++w) {
    out[w] = group.hash(values[w].value);
  }
  return out;
}

}  // namespace serial

namespace omp {

Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind) {
  check_gradient_shapes(x, y, theta);
  const Eigen::Index n = x.rows();
  const Eigen::Index classes = theta.cols();
  Matrix residuals(n, classes);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    residual_row(x, y, theta, kind, i, residuals.row(i).data());
  }
  // Each (j, c) entry sums over samples in ascending order, as the serial
  // loop does.
  Matrix grad = Matrix::Zero(theta.rows(), classes);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double xij = x(i, j);
      for (Eigen::Index c = 0; c < classes; ++c) {
        grad(j, c) += xij * residuals(i, c);
      }
    }
  }
  return grad;
}

std::vector<FieldElement> evaluate_shares(
    const PrimeField& field, const PolynomialTable& table,
    std::span<const FieldElement> points) {
  const std::size_t d = table.coordinates;
  const std::size_t total = points.size() * d;
  std::vector<FieldElement> out(total);
#pragma omp parallel for schedule(static)
  for (std::size_t idx = 0; idx < total; ++idx) {
    out[idx] = horner(field, table, idx % d, points[idx / d]);
  }
  return out;
}

std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows) {
  check_rows(weights, rows);
  const std::size_t d = rows.empty() ? 0 : rows.front().size();
  std::vector<FieldElement> out(d, field.zero());
#pragma omp parallel for schedule(static)
  for (std::size_t w = 0; w < d; ++w) {
    FieldElement acc = field.zero();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      acc = field.add(acc, field.mul(weights[j], rows[j][w]));
    }
    out[w] = acc;
  }
  return out;
}

std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values) {
  std::vector<GroupElement> out(values.size());
  const std::size_t d = values.size();
#pragma omp parallel for schedule(static)
  for (std::size_t w = 0; w < d; ++w) {
    out[w] = group.hash(values[w].value);
  }
  return out;
}

}  // namespace omp

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel_enabled(bool enabled) {
  g_parallel.store(enabled, std::memory_order_relaxed);
}

namespace {
bool use_omp() { return parallel_enabled() && omp_get_max_threads() > 1; }
}  // namespace

Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind) {
  return use_omp() ? omp::gradient(x, y, theta, kind)
                   : serial::gradient(x, y, theta, kind);
}

std::vector<FieldElement> evaluate_shares(
    const PrimeField& field, const PolynomialTable& table,
    std::span<const FieldElement> points) {
  return use_omp() ? omp::evaluate_shares(field, table, points)
                   : serial::evaluate_shares(field, table, points);
}

std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows) {
  return use_omp() ? omp::weighted_sum(field, weights, rows)
                   : serial::weighted_sum(field, weights, rows);
}

std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values) {
  return use_omp() ? omp::hash_vector(group, values)
                   : serial::hash_vector(group, values);
}

}  // namespace fogvl::kernels
