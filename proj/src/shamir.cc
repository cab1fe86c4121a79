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

#include "fogvl/shamir.h"

#include <random>
#include <string>
#include <unordered_set>

#include "fogvl/error.h"

namespace fogvl {

void SharingPolicy::validate() const {
  if (n == 0 || t == 0 || t > n) {
    throw PolicyError("sharing policy needs 1 <= t <= n, got t=" +
                      std::to_string(t) + " n=" + std::to_string(n));
  }
}

std::vector<FieldElement> default_points(const PrimeField& field,
                                         std::size_t n) {
  std::vector<FieldElement> points;
  points.reserve(n);
  for (std::size_t j = 0; j < n; ++j) points.push_back(field.element(j + 1));
  return points;
}

void check_points(const PrimeField& field,
                  std::span<const FieldElement> points) {
  std::unordered_set<std::uint64_t> seen;
  for (FieldElement p : points) {
    const std::uint64_t v = p.value % field.modulus();
    if (v == 0) throw PolicyError("evaluation point must be nonzero");
    if (!seen.insert(v).second) {
      throw DuplicatePointError("duplicate evaluation point " +
                                std::to_string(v));
    }
  }
}

kernels::PolynomialTable random_polynomials(
    const PrimeField& field, std::span<const FieldElement> secret,
    std::size_t terms, std::uint64_t seed) {
  kernels::PolynomialTable table;
  table.coordinates = secret.size();
  table.terms = terms;
  table.coeffs.resize(secret.size() * terms);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> uniform(0, field.modulus() - 1);
  for (std::size_t w = 0; w < secret.size(); ++w) {
    table.coeffs[w * terms] = field.element(secret[w].value);
    for (std::size_t k = 1; k < terms; ++k) {
      table.coeffs[w * terms + k] = {uniform(rng)};
    }
  }
  return table;
}

std::vector<ShareVector> share_with_polynomials(
    const PrimeField& field, const kernels::PolynomialTable& table,
    std::span<const FieldElement> points, std::uint64_t round_id) {
  check_points(field, points);
  const std::vector<FieldElement> flat =
      kernels::evaluate_shares(field, table, points);
  std::vector<ShareVector> shares(points.size());
  const std::size_t d = table.coordinates;
  for (std::size_t j = 0; j < points.size(); ++j) {
    shares[j].eval_point = field.element(points[j].value);
    shares[j].round_id = round_id;
    shares[j].values.assign(flat.begin() + j * d, flat.begin() + (j + 1) * d);
  }
  return shares;
}

std::vector<ShareVector> tss_share(const PrimeField& field,
                                   std::span<const FieldElement> secret,
                                   const SharingPolicy& policy,
                                   std::span<const FieldElement> points,
                                   std::uint64_t seed,
                                   std::uint64_t round_id) {
  policy.validate();
  if (secret.empty()) throw PolicyError("cannot share an empty secret");
  if (points.size() != policy.n) {
    throw PolicyError("expected " + std::to_string(policy.n) +
                      " evaluation points, got " +
                      std::to_string(points.size()));
  }
  check_points(field, points);
  return share_with_polynomials(
      field, random_polynomials(field, secret, policy.t, seed), points,
      round_id);
}

std::vector<FieldElement> lagrange_coeffs(
    const PrimeField& field, std::span<const FieldElement> points) {
  if (points.empty()) throw PolicyError("no interpolation points");
  check_points(field, points);
  std::vector<FieldElement> coeffs(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    // lambda_j = prod_{k != j} x_k / (x_k - x_j)
    FieldElement num = field.one();
    FieldElement den = field.one();
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      num = field.mul(num, points[k]);
      den = field.mul(den, field.sub(points[k], points[j]));
    }
    coeffs[j] = field.mul(num, field.inv(den));
  }
  return coeffs;
}

std::vector<FieldElement> tss_reconstruct(const PrimeField& field,
                                          std::span<const ShareVector> shares,
                                          const SharingPolicy& policy) {
  policy.validate();
  if (shares.size() < policy.t) {
    throw InsufficientSharesError(
        "reconstruction needs " + std::to_string(policy.t) + " shares, got " +
        std::to_string(shares.size()));
  }
  std::vector<FieldElement> points;
  std::vector<std::span<const FieldElement>> rows;
  for (const ShareVector& s : shares) {
    points.push_back(s.eval_point);
  }
  // Duplicates anywhere in the input are an error, not only in the prefix.
  check_points(field, points);
  points.resize(policy.t);
  for (std::size_t j = 0; j < policy.t; ++j) {
    if (shares[j].values.size() != shares.front().values.size()) {
      throw MismatchError("share vectors differ in dimension");
    }
    rows.emplace_back(shares[j].values);
  }
  return kernels::weighted_sum(field, lagrange_coeffs(field, points), rows);
}

ShareVector sum_shares(const PrimeField& field,
                       std::span<const ShareVector> batch) {
  if (batch.empty()) throw MismatchError("cannot sum an empty share batch");
  ShareVector out = batch.front();
  for (std::size_t i = 1; i < batch.size(); ++i) {
    const ShareVector& s = batch[i];
    if (s.eval_point != out.eval_point) {
      throw MismatchError("summing shares held at different points");
    }
    if (s.round_id != out.round_id) {
      throw MismatchError("summing shares from different rounds");
    }
    if (s.values.size() != out.values.size()) {
      throw MismatchError("summing shares of different dimension");
    }
    for (std::size_t w = 0; w < out.values.size(); ++w) {
      out.values[w] = field.add(out.values[w], s.values[w]);
    }
  }
  return out;
}

}  // namespace fogvl
