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

#include "fogvl/vahss.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <string>

#include "fogvl/error.h"
#include "fogvl/kernels.h"

namespace fogvl {
namespace {

void put_le64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

FieldElement prf_eval(std::span<const std::uint8_t> key, int fog_id,
                      std::uint64_t timestamp, const PrimeField& exponents) {
  if (key.size() != kPrfKeyBytes) {
    throw PolicyError("PRF key must be " + std::to_string(kPrfKeyBytes) +
                      " bytes, got " + std::to_string(key.size()));
  }
  std::array<std::uint8_t, 16> msg;
  put_le64(static_cast<std::uint64_t>(static_cast<std::int64_t>(fog_id)),
           msg.data());
  put_le64(timestamp, msg.data() + 8);
  std::array<unsigned char, EVP_MAX_MD_SIZE> mac;
  unsigned int mac_len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(),
           msg.size(), mac.data(), &mac_len) == nullptr) {
    throw Error("HMAC-SHA256 failed");
  }
  // 128 bits reduced mod a 62-bit r: bias below 2^-66.
  unsigned __int128 acc = 0;
  for (int i = 15; i >= 0; --i) acc = (acc << 8) | mac[i];
  return {static_cast<std::uint64_t>(acc % exponents.modulus())};
}

std::vector<BlindingShare> balance_blinding(const PrimeField& exponents,
                                            std::vector<BlindingShare> prs) {
  if (prs.empty()) return prs;
  FieldElement sum = exponents.zero();
  for (std::size_t i = 0; i + 1 < prs.size(); ++i) {
    sum = exponents.add(sum, exponents.element(prs[i].pr.value));
  }
  prs.back().pr = exponents.neg(sum);
  return prs;
}

VahssSharing vahss_share_secret(const PrimeField& field,
                                const HashGroup& group,
                                std::span<const FieldElement> c,
                                const BlindingShare& pr, std::size_t m,
                                std::size_t t, std::uint64_t seed,
                                std::uint64_t round_id) {
  const SharingPolicy policy{m, t};
  VahssSharing out;
  out.shares = tss_share(field, c, policy, default_points(field, m), seed,
                         round_id);
  std::vector<FieldElement> masked(c.size());
  const FieldElement mask = field.element(pr.pr.value);
  for (std::size_t w = 0; w < c.size(); ++w) {
    masked[w] = field.add(field.element(c[w].value), mask);
  }
  out.tag.tau = kernels::hash_vector(group, masked);
  out.tag.fog_id = pr.fog_id;
  out.tag.round_id = round_id;
  return out;
}

std::vector<FieldElement> vahss_partial_eval(
    const PrimeField& field, std::size_t fog_index,
    std::span<const FieldElement> all_points,
    std::span<const ShareVector> column) {
  if (column.empty()) throw MismatchError("partial eval over an empty column");
  if (fog_index >= all_points.size()) {
    throw MismatchError("fog index outside the point set");
  }
  const FieldElement mine = all_points[fog_index];
  for (const ShareVector& s : column) {
    if (s.eval_point != mine) {
      throw MismatchError("share in column is not at this fog's point");
    }
  }
  const ShareVector sum = sum_shares(field, column);
  const FieldElement lambda = lagrange_coeffs(field, all_points)[fog_index];
  std::vector<FieldElement> y(sum.values.size());
  for (std::size_t w = 0; w < y.size(); ++w) {
    y[w] = field.mul(lambda, sum.values[w]);
  }
  return y;
}

PartialProof vahss_partial_proof(const HashGroup& group,
                                 std::span<const FieldElement> y,
                                 int fog_id) {
  return {kernels::hash_vector(group, y), fog_id};
}

std::vector<FieldElement> vahss_final_eval(
    const PrimeField& field,
    std::span<const std::vector<FieldElement>> ys) {
  if (ys.empty()) throw MismatchError("final eval needs at least one input");
  std::vector<FieldElement> y(ys.front().size(), field.zero());
  for (const auto& yj : ys) {
    if (yj.size() != y.size()) {
      throw MismatchError("partial results differ in dimension");
    }
    for (std::size_t w = 0; w < y.size(); ++w) y[w] = field.add(y[w], yj[w]);
  }
  return y;
}

std::vector<GroupElement> vahss_final_proof(
    const HashGroup& group, std::span<const PartialProof> sigmas) {
  if (sigmas.empty()) throw MismatchError("final proof needs a partial proof");
  std::vector<GroupElement> sigma(sigmas.front().sigma.size(),
                                  group.identity());
  for (const PartialProof& p : sigmas) {
    if (p.sigma.size() != sigma.size()) {
      throw MismatchError("partial proofs differ in dimension");
    }
    for (std::size_t w = 0; w < sigma.size(); ++w) {
      sigma[w] = group.mul(sigma[w], p.sigma[w]);
    }
  }
  return sigma;
}

std::vector<GroupElement> tag_product(const HashGroup& group,
                                      std::span<const ProofTag> taus) {
  if (taus.empty()) return {};
  std::vector<GroupElement> prod(taus.front().tau.size(), group.identity());
  for (const ProofTag& tag : taus) {
    if (tag.tau.size() != prod.size()) {
      throw MismatchError("tags differ in dimension");
    }
    for (std::size_t w = 0; w < prod.size(); ++w) {
      prod[w] = group.mul(prod[w], tag.tau[w]);
    }
  }
  return prod;
}

bool vahss_verify(const HashGroup& group, std::span<const ProofTag> taus,
                  std::span<const GroupElement> sigma,
                  std::span<const FieldElement> y) {
  if (taus.empty()) return false;
  for (const ProofTag& tag : taus) {
    if (tag.tau.size() != y.size()) return false;
  }
  if (sigma.size() != y.size()) return false;
  const std::vector<GroupElement> prod = tag_product(group, taus);
  const std::vector<GroupElement> hy = kernels::hash_vector(group, y);
  bool ok = true;
  for (std::size_t w = 0; w < y.size(); ++w) {
    ok &= sigma[w] == prod[w];
    ok &= prod[w] == hy[w];
  }
  return ok;
}

}  // namespace fogvl
