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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fogvl/constants.h"
#include "fogvl/error.h"
#include "fogvl/field.h"

namespace fogvl {
namespace {

constexpr std::uint64_t kQ = (std::uint64_t{1} << 61) - 1;

// Reference modular multiply without the Mersenne shortcut.
std::uint64_t slow_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

TEST(PrimeField, RejectsCompositeModulus) {
  EXPECT_THROW(PrimeField(15), PolicyError);
  EXPECT_THROW(PrimeField(1), PolicyError);
  EXPECT_NO_THROW(PrimeField(17));
}

TEST(PrimeField, InverseBySearchInF17) {
  const PrimeField f(17);
  EXPECT_EQ(f.inv({1}).value, 1u);
  EXPECT_EQ(f.inv({2}).value, 9u);
  EXPECT_EQ(f.inv({16}).value, 16u);
  for (std::uint64_t a = 1; a < 17; ++a) {
    std::uint64_t found = 0;
    for (std::uint64_t b = 1; b < 17; ++b) {
      if (a * b % 17 == 1) found = b;
    }
    EXPECT_EQ(f.inv({a}).value, found) << a;
  }
  EXPECT_THROW(f.inv({0}), DivisionByZeroError);
}

TEST(PrimeField, DoubleInverseIsIdentity) {
  const PrimeField f(kQ);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const FieldElement e = f.element(rng() % (kQ - 1) + 1);
    EXPECT_EQ(f.inv(f.inv(e)), e);
  }
}

TEST(PrimeField, MersenneMulMatchesWideReduction) {
  const PrimeField f(kQ);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t a = rng() % kQ;
    const std::uint64_t b = rng() % kQ;
    ASSERT_EQ(f.mul({a}, {b}).value, slow_mulmod(a, b, kQ));
  }
  EXPECT_EQ(f.mul({kQ - 1}, {kQ - 1}).value, 1u);
}

TEST(PrimeField, ValuesStayReduced) {
  const PrimeField f(17);
  for (std::uint64_t a = 0; a < 17; ++a) {
    for (std::uint64_t b = 0; b < 17; ++b) {
      EXPECT_LT(f.add({a}, {b}).value, 17u);
      EXPECT_LT(f.sub({a}, {b}).value, 17u);
      EXPECT_LT(f.mul({a}, {b}).value, 17u);
      EXPECT_EQ(f.add({a}, {b}).value, (a + b) % 17);
      EXPECT_EQ(f.sub({a}, {b}).value, (a + 17 - b) % 17);
    }
  }
}

TEST(PrimeField, SignedEmbedding) {
  const PrimeField f(17);
  EXPECT_EQ(f.from_signed(-1).value, 16u);
  EXPECT_EQ(f.to_signed({16}), -1);
  EXPECT_EQ(f.to_signed({8}), 8);
  EXPECT_EQ(f.to_signed({9}), -8);
}

TEST(HashGroup, ToyGroupValues) {
  const HashGroup g(23, 11, 4);
  EXPECT_EQ(g.hash(0), g.identity());
  EXPECT_EQ(g.hash(3).value, 18u);
  EXPECT_EQ(g.hash(5).value, 12u);
  EXPECT_EQ(g.mul(g.hash(3), g.hash(5)).value, 9u);
  EXPECT_EQ(g.hash(8).value, 9u);
}

TEST(HashGroup, HomomorphismOverExponentsModR) {
  const HashGroup g(23, 11, 4);
  for (std::uint64_t a = 0; a < 11; ++a) {
    for (std::uint64_t b = 0; b < 11; ++b) {
      EXPECT_EQ(g.mul(g.hash(a), g.hash(b)), g.hash((a + b) % 11));
    }
  }
}

TEST(HashGroup, RejectsBadParameters) {
  EXPECT_THROW(HashGroup(23, 11, 5), PolicyError);  // 5 has order 22
  EXPECT_THROW(HashGroup(23, 7, 4), PolicyError);
  EXPECT_THROW(HashGroup(23, 11, 1), PolicyError);
}

TEST(HashGroup, ProductionGroupClosure) {
  const ProtocolConstants c;
  const HashGroup g = c.hash_group();
  EXPECT_EQ(g.pow({g.generator()}, g.order()), g.identity());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const GroupElement a = g.hash(rng());
    const GroupElement b = g.hash(rng());
    const GroupElement ab = g.mul(a, b);
    EXPECT_TRUE(g.contains(ab));
    EXPECT_EQ(g.pow(ab, g.order()), g.identity());
  }
  EXPECT_FALSE(g.contains({g.modulus() - 1}));  // order 2
}

TEST(FixedPointCodec, SpecValues) {
  const FixedPointCodec codec(PrimeField(kQ), 16);
  EXPECT_EQ(codec.encode(0.0).value, 0u);
  EXPECT_EQ(codec.encode(1.0).value, 65536u);
  EXPECT_EQ(codec.encode(-1.5).value, kQ - 98304);
  EXPECT_EQ(codec.decode({0}), 0.0);
  EXPECT_EQ(codec.decode({65536}), 1.0);
  EXPECT_EQ(codec.decode({kQ - 98304}), -1.5);
}

TEST(FixedPointCodec, NegativesLandInUpperHalf) {
  const FixedPointCodec codec(PrimeField(kQ), 16);
  for (double x : {-1e-3, -0.5, -1.0, -12345.678}) {
    EXPECT_GE(codec.encode(x).value, kQ / 2 + 1) << x;
  }
}

TEST(FixedPointCodec, RoundTripWithinOneUlpOfScale) {
  const FixedPointCodec codec(PrimeField(kQ), 16);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    EXPECT_LE(std::abs(codec.decode(codec.encode(x)) - x), 1.0 / 65536);
  }
}

TEST(FixedPointCodec, AdditionIsExact) {
  const PrimeField f(kQ);
  const FixedPointCodec codec(f, 16);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> u(-(1LL << 40), 1LL << 40);
  for (int i = 0; i < 10000; ++i) {
    const double a = static_cast<double>(u(rng)) / 65536;
    const double b = static_cast<double>(u(rng)) / 65536;
    EXPECT_EQ(codec.decode(f.add(codec.encode(a), codec.encode(b))), a + b);
  }
}

TEST(FixedPointCodec, OverflowAndNonFinite) {
  const FixedPointCodec codec(PrimeField(kQ), 16);
  const double limit = static_cast<double>(kQ / 2) / 65536;
  EXPECT_THROW(codec.encode(limit * 1.01), OverflowError);
  EXPECT_THROW(codec.encode(-limit * 1.01), OverflowError);
  EXPECT_THROW(codec.encode(std::nan("")), OverflowError);
  EXPECT_THROW(codec.encode(INFINITY), OverflowError);
}

TEST(LiftSigned, PreservesSignedValue) {
  const PrimeField q(kQ);
  const ProtocolConstants c;
  const PrimeField r(c.r);
  for (std::int64_t v : {0LL, 1LL, -1LL, 123456789LL, -987654321LL}) {
    EXPECT_EQ(r.to_signed(lift_signed(q, r, q.from_signed(v))), v);
  }
}

TEST(Constants, DefaultsValidateAndRoundTrip) {
  const ProtocolConstants c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.p, 2 * c.r + 1);
  EXPECT_GT(c.r, c.q);
  std::istringstream in(c.to_text());
  const ProtocolConstants back = ProtocolConstants::parse(in);
  EXPECT_EQ(back.q, c.q);
  EXPECT_EQ(back.p, c.p);
  EXPECT_EQ(back.r, c.r);
  EXPECT_EQ(back.g, c.g);
  EXPECT_EQ(back.frac_bits, c.frac_bits);
}

TEST(Constants, ShippedFileMatchesDefaults) {
  const ProtocolConstants c =
      ProtocolConstants::load(std::string(FOGVL_CONSTANTS_DIR) + "/v1.txt");
  const ProtocolConstants d;
  EXPECT_EQ(c.q, d.q);
  EXPECT_EQ(c.p, d.p);
  EXPECT_EQ(c.r, d.r);
  EXPECT_EQ(c.g, d.g);
  EXPECT_EQ(c.frac_bits, d.frac_bits);
}

TEST(Constants, RejectsInconsistentFile) {
  std::istringstream bad("q=17\np=23\nr=11\ng=4\nfrac_bits=2\n");
  EXPECT_THROW(ProtocolConstants::parse(bad).validate(), ConfigError);
  std::istringstream junk("q=abc\n");
  EXPECT_THROW(ProtocolConstants::parse(junk), ConfigError);
}

}  // namespace
}  // namespace fogvl
