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

// Data-parallel inner loops of the protocol.
//
// Every kernel has a serial reference in `kernels::serial` and an OpenMP
// version in `kernels::omp`. The two must agree bit for bit: the OpenMP
// versions partition the output, never a reduction, so each output entry
// is accumulated in the same order as the serial loop.

#ifndef FOGVL_KERNELS_H_
#define FOGVL_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fogvl/field.h"
#include "fogvl/types.h"

namespace fogvl::kernels {

// Coefficient table for coordinate-wise Shamir sharing: row w holds the
// polynomial for coordinate w, constant term first.
struct PolynomialTable {
  std::size_t coordinates = 0;
  std::size_t terms = 0;  // threshold t = degree + 1
  std::vector<FieldElement> coeffs;  // coordinates x terms, row-major

  FieldElement at(std::size_t w, std::size_t k) const {
    return coeffs[w * terms + k];
  }
};

namespace serial {

// Sum over samples of (h(x) - y) x^T, shaped like theta. `x` carries the
// bias column; `theta` is (features + 1) x classes.
Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind);

// out[j * coordinates + w] = poly_w(points[j]).
std::vector<FieldElement> evaluate_shares(const PrimeField& field,
                                          const PolynomialTable& table,
                                          std::span<const FieldElement> points);

// out[w] = sum_j weights[j] * rows[j][w].
std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows);

std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values);

}  // namespace serial

namespace omp {

Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind);
std::vector<FieldElement> evaluate_shares(const PrimeField& field,
                                          const PolynomialTable& table,
                                          std::span<const FieldElement> points);
std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows);
std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values);

}  // namespace omp

// Dispatch used by the library: OpenMP when more than one thread is
// available, else the serial reference.
bool parallel_enabled();
void set_parallel_enabled(bool enabled);

Matrix gradient(const Matrix& x, const Matrix& y, const Matrix& theta,
                ModelKind kind);
std::vector<FieldElement> evaluate_shares(const PrimeField& field,
                                          const PolynomialTable& table,
                                          std::span<const FieldElement> points);
std::vector<FieldElement> weighted_sum(
    const PrimeField& field, std::span<const FieldElement> weights,
    std::span<const std::span<const FieldElement>> rows);
std::vector<GroupElement> hash_vector(const HashGroup& group,
                                      std::span<const FieldElement> values);

}  // namespace fogvl::kernels

#endif  // FOGVL_KERNELS_H_
