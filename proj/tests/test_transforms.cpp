/*
 * Copyright 2026 The rnsw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "golden_transforms.hpp"
#include "oracles.hpp"
#include "rnsw/error.hpp"
#include "rnsw/random.hpp"
#include "rnsw/transforms.hpp"

namespace rnsw {
namespace {

using boost::multiprecision::denominator;

template <typename T, std::size_t R, std::size_t C>
bool equals(const Matrix<T>& m, const std::array<std::array<std::int32_t, C>, R>& g) {
  if (m.rows() != R || m.cols() != C) return false;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (m(i, j) != g[i][j]) return false;
  return true;
}

template <std::size_t R, std::size_t C>
bool equals_exact(const Matrix<Rational>& m, const std::array<std::array<std::int64_t, C>, R>& g) {
  if (m.rows() != R || m.cols() != C) return false;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (m(i, j) != Rational(g[i][j])) return false;
  return true;
}

std::vector<std::string> names(const InterpolationPoints& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(p.to_string());
  return out;
}

TEST(DefaultPoints, Sequence) {
  EXPECT_EQ(names(default_points(2)), (std::vector<std::string>{"0", "inf"}));
  EXPECT_EQ(names(default_points(4)), (std::vector<std::string>{"0", "1", "-1", "inf"}));
  EXPECT_EQ(names(default_points(12)), (std::vector<std::string>{"0", "1", "-1", "2", "-2", "3", "-3", "4",
                                                                 "-4", "5", "-5", "inf"}));
  // Odd N takes the next positive point before infinity.
  EXPECT_EQ(names(default_points(11)), (std::vector<std::string>{"0", "1", "-1", "2", "-2", "3", "-3", "4",
                                                                 "-4", "5", "inf"}));
  EXPECT_THROW(default_points(1), Error);
}

TEST(InterpolationPoints, Validation) {
  using P = InterpolationPoint;
  EXPECT_THROW(InterpolationPoints({P(0), P(1), P(0)}), Error);
  EXPECT_THROW(InterpolationPoints({P(0), P::infinity(), P(1)}), Error);
  EXPECT_THROW(InterpolationPoints({P(Rational(1, 2)), P::parse("2/4")}), Error);
  EXPECT_EQ(P::parse("-3/6").to_string(), "-1/2");
  EXPECT_TRUE(P::parse("inf").is_infinite());
  EXPECT_THROW(P::parse("x"), Error);
  EXPECT_THROW(P::parse("1/0"), Error);
}

TEST(Vandermonde, RowsAndInfinity) {
  const auto v = vandermonde(default_points(4));
  const std::array<std::array<std::int32_t, 4>, 4> expect = {
      {{1, 0, 0, 0}, {1, 1, 1, 1}, {1, -1, 1, -1}, {0, 0, 0, 1}}};
  EXPECT_TRUE(equals(v, expect));
  const auto v12 = vandermonde(default_points(12));
  Rational p = 1;
  for (std::size_t j = 0; j < 12; ++j, p *= 5) EXPECT_EQ(v12(9, j), p);  // point 5
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(v12(1, j), Rational(1));
}

TEST(Vandermonde, ExactInverseUpToTwenty) {
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto pts = default_points(n);
    EXPECT_EQ(multiply(vandermonde(pts), vandermonde_inverse(pts)), Matrix<Rational>::identity(n)) << n;
  }
}

TEST(Vandermonde, ExactInverseRationalPoints) {
  using P = InterpolationPoint;
  const InterpolationPoints pts({P(0), P(1), P(-1), P(Rational(1, 2)), P(Rational(-1, 2)), P(2), P::infinity()});
  EXPECT_EQ(multiply(vandermonde(pts), vandermonde_inverse(pts)), Matrix<Rational>::identity(7));
  const InterpolationPoints finite({P(0), P(1), P(-1), P(3)});
  EXPECT_EQ(multiply(vandermonde(finite), vandermonde_inverse(finite)), Matrix<Rational>::identity(4));
}

TEST(Vandermonde, ModularInverseIsIdentity) {
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto pts = default_points(n);
    const auto v = vandermonde(pts), inv = vandermonde_inverse(pts);
    for (const std::int64_t m : {253, 251, 247, 241, 239, 4001, 4331}) {
      const Modulus mod(m);
      bool compatible = true;
      for (const auto& e : inv.data())
        if (std::gcd(static_cast<std::int64_t>(denominator(e) % m), m) != 1) compatible = false;
      if (!compatible) continue;  // e.g. 253 = 11*23 once N > 12
      const auto vm = reduce_matrix(v, mod), im = reduce_matrix(inv, mod);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t s = 0;
          for (std::size_t k = 0; k < n; ++k) s += std::int64_t{vm(i, k)} * im(k, j);
          ASSERT_EQ(oracle::balanced_mod(s, m), i == j ? 1 : 0) << n << " " << m;
        }
    }
  }
}

TEST(DeriveTransforms, SmallTilesMatchKnownForms) {
  const auto f2 = derive_transforms(2, 3);
  EXPECT_EQ(f2.alpha, Rational(1, 2));
  const std::array<std::array<std::int32_t, 3>, 4> g2 = {{{2, 0, 0}, {1, 1, 1}, {1, -1, 1}, {0, 0, 2}}};
  EXPECT_TRUE(equals(f2.gprime, g2));
  const std::array<std::array<std::int32_t, 4>, 4> bt2 = {
      {{1, 0, -1, 0}, {0, 1, 1, 0}, {0, -1, 1, 0}, {0, -1, 0, 1}}};
  EXPECT_TRUE(equals(f2.bt, bt2));
  const std::array<std::array<std::int32_t, 4>, 2> at2 = {{{1, 1, 1, 0}, {0, 1, -1, 1}}};
  EXPECT_TRUE(equals(f2.at, at2));

  const auto f4 = derive_transforms(4, 3);
  EXPECT_EQ(f4.alpha, Rational(1, 24));
  const std::array<std::array<std::int32_t, 6>, 6> bt4 = {{{4, 0, -5, 0, 1, 0},
                                                           {0, 4, 4, -1, -1, 0},
                                                           {0, -4, 4, 1, -1, 0},
                                                           {0, -2, -1, 2, 1, 0},
                                                           {0, 2, -1, -2, 1, 0},
                                                           {0, 4, 0, -5, 0, 1}}};
  EXPECT_TRUE(equals(f4.bt, bt4));
  const std::array<std::array<std::int32_t, 3>, 6> g4 = {
      {{6, 0, 0}, {4, 4, 4}, {4, -4, 4}, {1, 2, 4}, {1, -2, 4}, {0, 0, 24}}};
  EXPECT_TRUE(equals(f4.gprime, g4));
  const std::array<std::array<std::int32_t, 6>, 4> at4 = {
      {{1, 1, 1, 1, 1, 0}, {0, 1, -1, 2, -2, 0}, {0, 1, 1, 4, 4, 0}, {0, 1, -1, 8, -8, 1}}};
  EXPECT_TRUE(equals(f4.at, at4));
}

TEST(DeriveTransforms, TenByThreeExact) {
  const auto ts = derive_transforms(10, 3);
  EXPECT_EQ(ts.alpha, Rational(1, 3628800));
  EXPECT_EQ(BigInt(3628800), BigInt(256) * 81 * 25 * 7);
  EXPECT_TRUE(equals_exact(ts.at, golden::at_exact));
  EXPECT_TRUE(equals_exact(ts.bt, golden::bt_exact));
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(ts.gprime(i, j), BigInt(golden::gprime_exact[i][j]));
      EXPECT_EQ(ts.g(i, j), ts.alpha * Rational(ts.gprime(i, j)));
    }
  const std::vector<std::int64_t> first = {14400, 0, -21076, 0, 7645, 0, -1023, 0, 55, 0, -1, 0};
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(ts.bt(0, j), Rational(first[j]));
}

TEST(DeriveTransforms, RejectsWrongPointCount) {
  EXPECT_THROW(derive_transforms(2, 3, default_points(5)), Error);
  EXPECT_THROW(derive_transforms(0, 3), Error);
}

TEST(Compatibility, ModulusChecks) {
  const auto ts = derive_transforms(10, 3);
  EXPECT_TRUE(check_modulus_compatibility(ts, Modulus(253)));
  EXPECT_TRUE(check_modulus_compatibility(ts, Modulus(251)));
  EXPECT_TRUE(check_modulus_compatibility(ts, Modulus(247)));
  EXPECT_TRUE(check_modulus_compatibility(ts, Modulus(4001)));
  EXPECT_TRUE(check_modulus_compatibility(ts, Modulus(4331)));
  EXPECT_FALSE(check_modulus_compatibility(ts, Modulus(5)));
  const auto conflict = find_modulus_conflict(ts, 10);
  ASSERT_TRUE(conflict.has_value());
  EXPECT_EQ(conflict->prime_factor, 2);
  EXPECT_EQ(conflict->denominator, 3628800);
  try {
    reduce_transforms_mod(ts, Modulus(21));
    FAIL() << "expected NotCoprime";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCoprime);
    EXPECT_NE(std::string(e.what()).find("shares factor 3"), std::string::npos) << e.what();
  }
  // Point differences reach 11 and 13 once N > 12.
  const auto f14 = derive_transforms(14, 3);
  EXPECT_FALSE(check_modulus_compatibility(f14, Modulus(253)));
  EXPECT_FALSE(check_modulus_compatibility(f14, Modulus(247)));
  for (const std::int64_t m : {251, 241, 239, 4001, 4331})
    EXPECT_TRUE(check_modulus_compatibility(f14, Modulus(m))) << m;
}

TEST(ReduceTransforms, GoldenModularMatrices) {
  const auto ts = derive_transforms(10, 3);
  const auto check = [&](std::int64_t m, const auto& at, const auto& g, const auto& bt) {
    const auto mt = reduce_transforms_mod(ts, Modulus(m));
    EXPECT_TRUE(equals(mt.at, at)) << "AT mod " << m;
    EXPECT_TRUE(equals(mt.g, g)) << "G mod " << m;
    EXPECT_TRUE(equals(mt.bt, bt)) << "BT mod " << m;
  };
  check(253, golden::at_253, golden::g_253, golden::bt_253);
  check(251, golden::at_251, golden::g_251, golden::bt_251);
  check(247, golden::at_247, golden::g_247, golden::bt_247);
  check(4001, golden::at_4001, golden::g_4001, golden::bt_4001);
  check(4331, golden::at_4331, golden::g_4331, golden::bt_4331);

  const auto g253 = reduce_transforms_mod(ts, Modulus(253)).g;
  const std::vector<std::int32_t> col0 = {12, 10, 10, 78, 78, -34, -34, -120, -120, -12, -12, 0};
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(g253(i, 0), col0[i]);
  EXPECT_EQ(reduce_transforms_mod(ts, Modulus(4001)).g(0, 0), 222);
  EXPECT_EQ(reduce_transforms_mod(derive_transforms(2, 3), Modulus(253)).g(1, 0),
            oracle::balanced_mod(127, 253));
}

TEST(ReduceTransforms, EntriesAgreeWithRationalDefinition) {
  for (const auto& [m, r] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 3}, {8, 5}, {14, 3}}) {
    const auto ts = derive_transforms(m, r);
    for (const std::int64_t mod : {251, 241, 239, 4331}) {
      const auto mt = reduce_transforms_mod(ts, Modulus(mod));
      for (std::size_t i = 0; i < ts.g.rows(); ++i)
        for (std::size_t j = 0; j < ts.g.cols(); ++j) {
          const Rational& e = ts.g(i, j);
          const auto num = oracle::balanced_mod(boost::multiprecision::numerator(e), mod);
          const auto den = oracle::balanced_mod(denominator(e), mod);
          ASSERT_EQ(oracle::balanced_mod(num * oracle::brute_inverse(den, mod), mod), mt.g(i, j));
          ASSERT_LE(std::abs(mt.g(i, j)), (mod - 1) / 2);
        }
    }
  }
}

// AT [(G' g G'^T) (.) (BT d B)] A equals alpha^-2 times the correlation,
// evaluated with big integers (integer points keep BT integral).
TEST(DeriveTransforms, BilinearIdentityExact) {
  Rng rng(31);
  for (std::size_t m = 2; m <= 14; ++m)
    for (const std::size_t r : {3, 5}) {
      const auto ts = derive_transforms(m, r);
      const std::size_t n = ts.tile_size;
      Matrix<BigInt> at(m, n), bt(n, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) at(i, j) = boost::multiprecision::numerator(ts.at(i, j));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          ASSERT_EQ(denominator(ts.bt(i, j)), 1);
          bt(i, j) = boost::multiprecision::numerator(ts.bt(i, j));
        }
      const BigInt scale = denominator(ts.alpha) * denominator(ts.alpha);
      const auto gp_t = ts.gprime.transposed(), b = bt.transposed(), a = at.transposed();
      for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_tile(r, r, rng);
        const auto d = oracle::random_tile(n, n, rng);
        Matrix<BigInt> gb(r, r), db(n, n);
        for (std::size_t i = 0; i < r * r; ++i) gb.data()[i] = g.data()[i];
        for (std::size_t i = 0; i < n * n; ++i) db.data()[i] = d.data()[i];
        auto u = multiply(multiply(ts.gprime, gb), gp_t);
        const auto v = multiply(multiply(bt, db), b);
        for (std::size_t i = 0; i < n * n; ++i) u.data()[i] *= v.data()[i];
        const auto y = multiply(multiply(at, u), a);
        const auto expect = oracle::correlate(g, d);
        for (std::size_t i = 0; i < m * m; ++i)
          ASSERT_EQ(y.data()[i], scale * expect.data()[i]) << "F(" << m << "," << r << ")";
      }
    }
}

TEST(DataWidth, KnownSmallTiles) {
  const auto f2 = data_width_analysis(derive_transforms(2, 3), 8);
  EXPECT_DOUBLE_EQ(f2.filter_magnification, 3.5);
  EXPECT_DOUBLE_EQ(f2.input_magnification, 2.0);
  EXPECT_EQ(f2.required_bits, 12);
  EXPECT_EQ(f2.max_filter_row_l1, 3);
  const auto f4 = data_width_analysis(derive_transforms(4, 3), 8);
  EXPECT_NEAR(f4.filter_magnification, 125.0, 1.25);
  EXPECT_NEAR(f4.input_magnification, 28.7, 0.287);
  EXPECT_EQ(f4.required_bits, 18);
  EXPECT_EQ(f4.max_filter_row_l1, 24);
  EXPECT_THROW(data_width_analysis(derive_transforms(2, 3), 1), Error);
}

// At 2-bit inputs the filter alphabet is {-1, 0, 1}; the largest
// transformed magnitude over all 3^9 filters fixes the needed width.
TEST(DataWidth, TwoBitExhaustive) {
  const auto ts = derive_transforms(2, 3);
  BigInt peak = 0;
  for (int code = 0; code < 19683; ++code) {
    Matrix<BigInt> g(3, 3);
    int c = code;
    for (auto& e : g.data()) {
      e = c % 3 - 1;
      c /= 3;
    }
    const auto u = multiply(multiply(ts.gprime, g), ts.gprime.transposed());
    for (const auto& e : u.data()) peak = std::max(peak, BigInt(abs(e)));
  }
  const int bits = 1 + ceil_log2(peak);
  EXPECT_EQ(data_width_analysis(ts, 2).required_bits, bits);
}

TEST(ArithmeticReduction, ReferenceCells) {
  const auto r2 = [](std::int64_t m, std::int64_t r, std::int64_t n) {
    return static_cast<double>(arithmetic_reduction(m, r, n));
  };
  EXPECT_NEAR(r2(12, 5, 2), 7.03, 0.005);
  EXPECT_NEAR(r2(12, 5, 3), 4.69, 0.005);
  EXPECT_NEAR(r2(14, 3, 3), 2.30, 0.005);
  EXPECT_EQ(arithmetic_reduction(2, 3, 3), Rational(3, 4));
  EXPECT_EQ(arithmetic_reduction(2, 3, 1), Rational(9, 4));
  EXPECT_EQ(arithmetic_reduction(4, 3, 1), Rational(4));
  EXPECT_THROW(arithmetic_reduction(0, 3, 1), Error);
}

TEST(ArithmeticReduction, IncreasesWithTile) {
  for (const std::int64_t r : {3, 5})
    for (const std::int64_t n : {1, 2, 3})
      for (std::int64_t m = 1; m < 30; ++m)
        EXPECT_LT(arithmetic_reduction(m, r, n), arithmetic_reduction(m + 1, r, n));
}

TEST(CeilLog2, Values) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(1143), 11);
  EXPECT_EQ(ceil_log2(BigInt(1) << 100), 100);
  EXPECT_THROW(ceil_log2(0), Error);
}

}  // namespace
}  // namespace rnsw
