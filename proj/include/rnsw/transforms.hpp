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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnsw/bigint.hpp"
#include "rnsw/matrix.hpp"
#include "rnsw/residue.hpp"

namespace rnsw {

/// A finite rational interpolation point or the point at infinity.
class InterpolationPoint {
 public:
  InterpolationPoint(Rational value) : value_(std::move(value)) {}  // NOLINT
  InterpolationPoint(std::int64_t value) : value_(value) {}        // NOLINT
  static InterpolationPoint infinity() { return InterpolationPoint(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful for finite points.
  const Rational& value() const noexcept { return value_; }

  /// "inf", an integer, or "p/q".
  std::string to_string() const;
  /// Accepts the forms produced by to_string().
  static InterpolationPoint parse(const std::string& text);

  friend bool operator==(const InterpolationPoint& a, const InterpolationPoint& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  InterpolationPoint() : infinite_(true) {}

  bool infinite_ = false;
  Rational value_{0};
};

/// Pairwise-distinct points; at most one infinity, and only in last place.
class InterpolationPoints {
 public:
  explicit InterpolationPoints(std::vector<InterpolationPoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  const InterpolationPoint& operator[](std::size_t i) const { return points_[i]; }
  bool has_infinity() const noexcept {
    return !points_.empty() && points_.back().is_infinite();
  }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const InterpolationPoints&, const InterpolationPoints&) = default;

 private:
  std::vector<InterpolationPoint> points_;
};

/// 0, 1, -1, 2, -2, ... (first n-1 of them) followed by infinity.
InterpolationPoints default_points(std::size_t n);

/// Row i is (1, S_i, ..., S_i^{N-1}); the infinity row is (0, ..., 0, 1).
Matrix<Rational> vandermonde(const InterpolationPoints& points);

/// Closed-form inverse. Column j holds the coefficients of the Lagrange
/// numerator prod_{m != j}(x - S_m) (elementary symmetric polynomials of the
/// other points, alternating in sign) divided by prod_{m != j}(S_j - S_m).
/// With infinity present the products run over the finite points only, and
/// the infinity column is prod_m(x - S_m) itself.
Matrix<Rational> vandermonde_inverse(const InterpolationPoints& points);

/// Transform matrices for F(M x M, R x R).
///
/// Rows of V^{-T} are rescaled by |prod_{m != j}(S_j - S_m)| and the
/// matching rows of G divided by the same factor, which keeps B^T integral
/// for integer points and collects every fraction in G (the product
/// (G g) (.) (B^T d) is unchanged by this diagonal rescaling).
struct ExactTransformSet {
  std::size_t output_size = 0;  // M
  std::size_t filter_size = 0;  // R
  std::size_t tile_size = 0;    // N = M + R - 1
  InterpolationPoints points{{}};
  Matrix<Rational> at;  // M x N
  Matrix<Rational> g;   // N x R
  Matrix<Rational> bt;  // N x N
  Rational alpha;       // g = alpha * gprime
  Matrix<BigInt> gprime;
};

ExactTransformSet derive_transforms(std::size_t m, std::size_t r,
                                    const InterpolationPoints& points);
/// Uses default_points(M + R - 1).
ExactTransformSet derive_transforms(std::size_t m, std::size_t r);

/// Every distinct denominator that appears in G or B^T, ascending.
std::vector<BigInt> transform_denominators(const ExactTransformSet& ts);

bool check_modulus_compatibility(const ExactTransformSet& ts, Modulus m);

/// When m is incompatible: the LCM of all transform denominators and the
/// smallest prime dividing gcd(m, LCM).
struct ModulusConflict {
  BigInt denominator;
  std::int64_t prime_factor;
};
std::optional<ModulusConflict> find_modulus_conflict(const ExactTransformSet& ts, Modulus m);
/// Raw-integer form, usable before the candidate is known to be a valid Modulus.
std::optional<ModulusConflict> find_modulus_conflict(const ExactTransformSet& ts,
                                                     std::int64_t modulus);

/// The three transform matrices reduced into the balanced range of one modulus.
struct ModularTransformSet {
  Modulus modulus;
  std::size_t output_size = 0;
  std::size_t filter_size = 0;
  std::size_t tile_size = 0;
  Matrix<std::int32_t> at;
  Matrix<std::int32_t> g;
  Matrix<std::int32_t> bt;
};

/// p/q -> p * q^{-1} mod m. Throws Error(kNotCoprime).
std::int32_t reduce_rational(const Rational& value, Modulus m);
Matrix<std::int32_t> reduce_matrix(const Matrix<Rational>& mat, Modulus m);
ModularTransformSet reduce_transforms_mod(const ExactTransformSet& ts, Modulus m);

struct DataWidthReport {
  double filter_magnification = 0;  // trace(G' G'^T) / N
  double input_magnification = 0;   // trace(B^T B) / N
  BigInt max_filter_row_l1;         // L_max, the largest row L1-norm of G'
  int required_bits = 0;            // 1 + ceil(log2(L_max^2 (2^{b-1} - 1)))
};

DataWidthReport data_width_analysis(const ExactTransformSet& ts, int input_bits);

/// M^2 R^2 / ((M + R - 1)^2 n).
Rational arithmetic_reduction(std::int64_t m, std::int64_t r, std::int64_t n_moduli);

/// Smallest k with 2^k >= x, for x >= 1.
int ceil_log2(const BigInt& x);

std::string to_string(const Rational& value);

}  // namespace rnsw
