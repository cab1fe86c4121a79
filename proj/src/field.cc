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

#include "fogvl/field.h"

#include <cmath>
#include <string>

#include "fogvl/error.h"

namespace fogvl {
namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 63;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t modulus)
    : modulus_(modulus), mersenne61_(modulus == kMersenne61) {
  if (modulus >= kMaxModulus || !is_prime(modulus)) {
    throw PolicyError("field modulus must be a prime below 2^63, got " +
                      std::to_string(modulus));
  }
}

FieldElement PrimeField::from_signed(std::int64_t v) const {
  if (v >= 0) return {static_cast<std::uint64_t>(v) % modulus_};
  // Negate in unsigned arithmetic so INT64_MIN is safe.
  std::uint64_t mag = (~static_cast<std::uint64_t>(v) + 1) % modulus_;
  return neg({mag});
}

std::int64_t PrimeField::to_signed(FieldElement e) const {
  if (e.value <= (modulus_ - 1) / 2) return static_cast<std::int64_t>(e.value);
  return -static_cast<std::int64_t>(modulus_ - e.value);
}

FieldElement PrimeField::pow(FieldElement base, std::uint64_t exp) const {
  FieldElement result = one();
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a.value % modulus_ == 0) {
    throw DivisionByZeroError("inverse of zero in F_" +
                              std::to_string(modulus_));
  }
  return pow(a, modulus_ - 2);
}

HashGroup::HashGroup(std::uint64_t p, std::uint64_t r, std::uint64_t g)
    : p_(p), r_(r), g_(g), exponents_(r) {
  if ((p - 1) % r != 0) {
    throw PolicyError("subgroup order must divide p - 1");
  }
  if (g <= 1 || g >= p || powmod_u64(g, r, p) != 1) {
    throw PolicyError("g does not generate the order-r subgroup");
  }
}

GroupElement HashGroup::hash(std::uint64_t x) const {
  return {powmod_u64(g_, x % r_, p_.modulus())};
}

GroupElement HashGroup::pow(GroupElement a, std::uint64_t e) const {
  return {powmod_u64(a.value, e, p_.modulus())};
}

bool HashGroup::contains(GroupElement a) const {
  if (a.value == 0 || a.value >= p_.modulus()) return false;
  return powmod_u64(a.value, r_, p_.modulus()) == 1;
}

FixedPointCodec::FixedPointCodec(PrimeField field, unsigned frac_bits)
    : field_(field),
      frac_bits_(frac_bits),
      scale_(std::ldexp(1.0, static_cast<int>(frac_bits))) {
  if (frac_bits > 40) {
    throw PolicyError("fixed-point precision above 40 bits is not supported");
  }
}

FieldElement FixedPointCodec::encode(double x) const {
  const double half = static_cast<double>(field_.modulus()) / 2.0;
  if (!std::isfinite(x) || std::abs(x) * scale_ >= half) {
    throw OverflowError("value " + std::to_string(x) +
                        " exceeds the fixed-point range");
  }
  const long long v = std::llround(x * scale_);
  const std::uint64_t bound = (field_.modulus() - 1) / 2;
  if (static_cast<std::uint64_t>(v < 0 ? -v : v) > bound) {
    throw OverflowError("value " + std::to_string(x) +
                        " exceeds the fixed-point range");
  }
  return field_.from_signed(v);
}

double FixedPointCodec::decode(FieldElement e) const {
  return static_cast<double>(field_.to_signed(e)) / scale_;
}

std::vector<FieldElement> FixedPointCodec::encode(
    std::span<const double> xs) const {
  std::vector<FieldElement> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(encode(x));
  return out;
}

std::vector<double> FixedPointCodec::decode(
    std::span<const FieldElement> es) const {
  std::vector<double> out;
  out.reserve(es.size());
  for (FieldElement e : es) out.push_back(decode(e));
  return out;
}

FieldElement lift_signed(const PrimeField& from, const PrimeField& to,
                         FieldElement e) {
  const std::int64_t v = from.to_signed(e);
  const std::uint64_t mag =
      v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  if (mag > (to.modulus() - 1) / 2) {
    throw OverflowError("signed residue does not fit the target field");
  }
  return to.from_signed(v);
}

}  // namespace fogvl
