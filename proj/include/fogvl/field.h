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

// Prime-field arithmetic, the prime-order hash group, and the fixed-point
// codec that embeds real-valued gradients into a field.
//
// Moduli are runtime values so that toy parameters (F_17, the order-11
// subgroup of Z_23^*) and production parameters share one code path. All
// residues fit in 63 bits; products are reduced through 128-bit
// intermediates, with a shift-and-add fast path for 2^61 - 1.

#ifndef FOGVL_FIELD_H_
#define FOGVL_FIELD_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fogvl {

struct FieldElement {
  std::uint64_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
};

struct GroupElement {
  std::uint64_t value = 1;

  friend bool operator==(GroupElement, GroupElement) = default;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  // Throws PolicyError unless `modulus` is a prime in [2, 2^63).
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(std::uint64_t v) const { return {v % modulus_}; }

  // Signed embedding: negatives land in the upper half [ceil(q/2), q).
  FieldElement from_signed(std::int64_t v) const;
  // Inverse of from_signed; residues above (q-1)/2 read as negative.
  std::int64_t to_signed(FieldElement e) const;

  FieldElement add(FieldElement a, FieldElement b) const {
    std::uint64_t s = a.value + b.value;
    return {s >= modulus_ ? s - modulus_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return {a.value >= b.value ? a.value - b.value
                               : a.value + (modulus_ - b.value)};
  }
  FieldElement neg(FieldElement a) const {
    return {a.value == 0 ? 0 : modulus_ - a.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return {mulmod(a.value, b.value)};
  }
  FieldElement pow(FieldElement base, std::uint64_t exp) const;
  // Throws DivisionByZeroError on zero.
  FieldElement inv(FieldElement a) const;

  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    if (mersenne61_) {
      std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
      std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
      std::uint64_t s = lo + hi;
      return s >= kMersenne61 ? s - kMersenne61 : s;
    }
    return static_cast<std::uint64_t>(prod % modulus_);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.modulus_ == b.modulus_;
  }

 private:
  static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

  std::uint64_t modulus_;
  bool mersenne61_;
};

// Order-r subgroup of Z_p^* generated by g, used as the homomorphic hash
// H(x) = g^x. Exponents live in F_r.
class HashGroup {
 public:
  // Throws PolicyError unless p and r are prime, r divides p - 1, and g
  // generates the order-r subgroup.
  HashGroup(std::uint64_t p, std::uint64_t r, std::uint64_t g);

  std::uint64_t modulus() const { return p_.modulus(); }
  std::uint64_t order() const { return r_; }
  std::uint64_t generator() const { return g_; }
  const PrimeField& exponent_field() const { return exponents_; }

  GroupElement identity() const { return {1}; }
  // g^(x mod r) mod p.
  GroupElement hash(std::uint64_t x) const;
  GroupElement mul(GroupElement a, GroupElement b) const {
    return {p_.mulmod(a.value, b.value)};
  }
  GroupElement pow(GroupElement a, std::uint64_t e) const;
  bool contains(GroupElement a) const;

 private:
  PrimeField p_;
  std::uint64_t r_;
  std::uint64_t g_;
  PrimeField exponents_;
};

// Scale-2^frac_bits fixed point over a prime field.
class FixedPointCodec {
 public:
  FixedPointCodec(PrimeField field, unsigned frac_bits);

  const PrimeField& field() const { return field_; }
  unsigned frac_bits() const { return frac_bits_; }
  double scale() const { return scale_; }

  // round(x * scale) mod q. Throws OverflowError when |x| * scale >= q/2
  // or x is not finite.
  FieldElement encode(double x) const;
  double decode(FieldElement e) const;

  std::vector<FieldElement> encode(std::span<const double> xs) const;
  std::vector<double> decode(std::span<const FieldElement> es) const;

  // Same scale over another field; used when values cross into F_r.
  FixedPointCodec rebase(const PrimeField& field) const {
    return FixedPointCodec(field, frac_bits_);
  }

 private:
  PrimeField field_;
  unsigned frac_bits_;
  double scale_;
};

// Re-embeds a signed residue of `from` into `to`. The signed value must fit
// in the half-range of `to`.
FieldElement lift_signed(const PrimeField& from, const PrimeField& to,
                         FieldElement e);

}  // namespace fogvl

#endif  // FOGVL_FIELD_H_
