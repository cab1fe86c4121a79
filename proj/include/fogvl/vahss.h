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

// Verifiable additive homomorphic secret sharing between fog nodes.
//
// Each fog i Shamir-shares its cluster sum c_i over F_r (r = hash group
// order) to all m fogs and publishes a tag tau_i = H(c_i + PR_i). Fog j
// pre-weights its column of shares by its Lagrange coefficient, so the
// cloud's job is a plain sum of the y_j and a product of the sigma_j.
// Verification checks sigma == prod tau_i and prod tau_i == H(y).
//
// Vectors are hashed coordinate by coordinate: tags, partial proofs and
// the final proof carry one group element per coordinate. Masks PR_i are
// one scalar per fog per round and sum to zero mod r across fogs.

#ifndef FOGVL_VAHSS_H_
#define FOGVL_VAHSS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fogvl/field.h"
#include "fogvl/shamir.h"

namespace fogvl {

inline constexpr std::size_t kPrfKeyBytes = 32;

struct ProofTag {
  std::vector<GroupElement> tau;
  int fog_id = 0;
  std::uint64_t round_id = 0;
};

struct PartialProof {
  std::vector<GroupElement> sigma;
  int fog_id = 0;
};

struct BlindingShare {
  FieldElement pr;  // mod r
  int fog_id = 0;
  std::uint64_t timestamp = 0;
};

struct VahssSharing {
  std::vector<ShareVector> shares;  // one per fog, points 1..m
  ProofTag tag;
};

// H(x) = g^(x mod r).
inline GroupElement hhash(const HashGroup& group, std::uint64_t x) {
  return group.hash(x);
}

// HMAC-SHA256(key, le64(fog_id) || le64(timestamp)) reduced mod r. Throws
// PolicyError unless the key is kPrfKeyBytes long.
FieldElement prf_eval(std::span<const std::uint8_t> key, int fog_id,
                      std::uint64_t timestamp, const PrimeField& exponents);

// Replaces the last mask by minus the sum of the others, so the set sums
// to zero mod r. With a single fog the mask becomes zero.
std::vector<BlindingShare> balance_blinding(const PrimeField& exponents,
                                            std::vector<BlindingShare> prs);

// `field` is the fog-tier share field; it must be the exponent field of
// `group` for verification to be sound.
VahssSharing vahss_share_secret(const PrimeField& field,
                                const HashGroup& group,
                                std::span<const FieldElement> c,
                                const BlindingShare& pr, std::size_t m,
                                std::size_t t, std::uint64_t seed,
                                std::uint64_t round_id = 0);

// y_j = lambda_j * sum_i x_ij, where lambda_j is fog j's Lagrange
// coefficient over `all_points`. Every share in `column` must sit at
// all_points[fog_index].
std::vector<FieldElement> vahss_partial_eval(
    const PrimeField& field, std::size_t fog_index,
    std::span<const FieldElement> all_points,
    std::span<const ShareVector> column);

PartialProof vahss_partial_proof(const HashGroup& group,
                                 std::span<const FieldElement> y,
                                 int fog_id = 0);

std::vector<FieldElement> vahss_final_eval(
    const PrimeField& field,
    std::span<const std::vector<FieldElement>> ys);

std::vector<GroupElement> vahss_final_proof(
    const HashGroup& group, std::span<const PartialProof> sigmas);

// Coordinate-wise prod_i tau_i.
std::vector<GroupElement> tag_product(const HashGroup& group,
                                      std::span<const ProofTag> taus);

bool vahss_verify(const HashGroup& group, std::span<const ProofTag> taus,
                  std::span<const GroupElement> sigma,
                  std::span<const FieldElement> y);

}  // namespace fogvl

#endif  // FOGVL_VAHSS_H_
