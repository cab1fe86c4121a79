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

// Coordinate-wise Shamir t-out-of-n sharing of field vectors, with the
// share-summation that makes it additively homomorphic.

#ifndef FOGVL_SHAMIR_H_
#define FOGVL_SHAMIR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fogvl/field.h"
#include "fogvl/kernels.h"

namespace fogvl {

struct SharingPolicy {
  std::size_t n = 1;  // parties
  std::size_t t = 1;  // threshold; polynomials have degree t - 1

  // t = floor(n/2) + 1.
  static SharingPolicy majority(std::size_t n) { return {n, n / 2 + 1}; }

  std::size_t degree() const { return t - 1; }
  // Throws PolicyError unless 1 <= t <= n.
  void validate() const;

  friend bool operator==(const SharingPolicy&, const SharingPolicy&) = default;
};

// One party's share of a vector: its abscissa plus one value per
// coordinate.
struct ShareVector {
  FieldElement eval_point;
  std::vector<FieldElement> values;
  std::uint64_t round_id = 0;

  friend bool operator==(const ShareVector&, const ShareVector&) = default;
};

// Points 1..n, the fixed per-cluster abscissas.
std::vector<FieldElement> default_points(const PrimeField& field,
                                         std::size_t n);

// Throws PolicyError on a zero point and DuplicatePointError on repeats.
void check_points(const PrimeField& field,
                  std::span<const FieldElement> points);

// Draws uniform coefficients for every coordinate, constant term = secret.
kernels::PolynomialTable random_polynomials(
    const PrimeField& field, std::span<const FieldElement> secret,
    std::size_t terms, std::uint64_t seed);

// Evaluates a fixed coefficient table at `points`; one ShareVector per
// point. tss_share is this plus random_polynomials.
std::vector<ShareVector> share_with_polynomials(
    const PrimeField& field, const kernels::PolynomialTable& table,
    std::span<const FieldElement> points, std::uint64_t round_id = 0);

std::vector<ShareVector> tss_share(const PrimeField& field,
                                   std::span<const FieldElement> secret,
                                   const SharingPolicy& policy,
                                   std::span<const FieldElement> points,
                                   std::uint64_t seed,
                                   std::uint64_t round_id = 0);

// Lagrange coefficients for interpolation at zero over `points`.
std::vector<FieldElement> lagrange_coeffs(const PrimeField& field,
                                          std::span<const FieldElement> points);

// Interpolates at zero from the first t shares. Throws
// InsufficientSharesError below threshold, DuplicatePointError on repeated
// abscissas, MismatchError on ragged vectors.
std::vector<FieldElement> tss_reconstruct(const PrimeField& field,
                                          std::span<const ShareVector> shares,
                                          const SharingPolicy& policy);

// Coordinate-wise sum of shares held at one abscissa in one round.
ShareVector sum_shares(const PrimeField& field,
                       std::span<const ShareVector> batch);

}  // namespace fogvl

#endif  // FOGVL_SHAMIR_H_
