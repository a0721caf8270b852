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

#include "rnsw/transforms.hpp"

#include <algorithm>
#include <sstream>

#include <boost/integer/common_factor_rt.hpp>

#include "rnsw/error.hpp"

namespace rnsw {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string InterpolationPoint::to_string() const {
  return infinite_ ? std::string("inf") : rnsw::to_string(value_);
}

InterpolationPoint InterpolationPoint::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return infinity();
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return InterpolationPoint(Rational(BigInt(text)));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator in point " + text);
    return InterpolationPoint(Rational(num, den));
  } catch (const std::runtime_error&) {
    throw Error(ErrorCode::kInvalidArgument, "cannot parse interpolation point '" + text + "'");
  }
}

InterpolationPoints::InterpolationPoints(std::vector<InterpolationPoint> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].is_infinite() && i + 1 != points_.size())
      throw Error(ErrorCode::kInvalidArgument, "infinity may only be the last point");
    for (std::size_t j = 0; j < i; ++j)
      if (points_[i] == points_[j])
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate interpolation point " + points_[i].to_string());
  }
}

InterpolationPoints default_points(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two points");
  std::vector<InterpolationPoint> pts;
  pts.reserve(n);
  pts.emplace_back(std::int64_t{0});
  for (std::int64_t k = 1; pts.size() < n - 1; ++k) {
    pts.emplace_back(k);
    if (pts.size() < n - 1) pts.emplace_back(-k);
  }
  pts.push_back(InterpolationPoint::infinity());
  return InterpolationPoints(std::move(pts));
}

namespace {

Rational power(const Rational& base, std::size_t exp) {
  Rational out(1);
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

std::size_t finite_count(const InterpolationPoints& pts) {
  return pts.size() - (pts.has_infinity() ? 1 : 0);
}

// Coefficients (ascending powers) of prod_{k in finite, k != skip} (x - S_k).
// The running update is the elementary-symmetric recurrence
// e_i <- e_i + s e_{i-1}, carried with the alternating sign built in.
std::vector<Rational> lagrange_numerator(const InterpolationPoints& pts, std::size_t skip) {
  std::vector<Rational> coeffs{Rational(1)};
  const std::size_t finite = finite_count(pts);
  for (std::size_t k = 0; k < finite; ++k) {
    if (k == skip) continue;
    const Rational& s = pts[k].value();
    coeffs.emplace_back(0);
    for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] = coeffs[i - 1] - s * coeffs[i];
    coeffs[0] = -s * coeffs[0];
  }
  return coeffs;
}

// prod_{k finite, k != j} (S_j - S_k); 1 for the point at infinity.
Rational lagrange_denominator(const InterpolationPoints& pts, std::size_t j) {
  if (pts[j].is_infinite()) return Rational(1);
  Rational d(1);
  const std::size_t finite = finite_count(pts);
  for (std::size_t k = 0; k < finite; ++k)
    if (k != j) d *= pts[j].value() - pts[k].value();
  return d;
}

}  // namespace

Matrix<Rational> vandermonde(const InterpolationPoints& pts) {
  const std::size_t n = pts.size();
  Matrix<Rational> v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i].is_infinite()) {
      v(i, n - 1) = 1;
      continue;
    }
    Rational p(1);
    for (std::size_t j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= pts[i].value();
    }
  }
  return v;
}

Matrix<Rational> vandermonde_inverse(const InterpolationPoints& pts) {
  const std::size_t n = pts.size();
  Matrix<Rational> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto num = lagrange_numerator(pts, pts[j].is_infinite() ? n : j);
    const Rational den = lagrange_denominator(pts, j);
    for (std::size_t i = 0; i < num.size(); ++i) inv(i, j) = num[i] / den;
  }
  return inv;
}

ExactTransformSet derive_transforms(std::size_t m, std::size_t r, const InterpolationPoints& pts) {
  if (m < 1 || r < 1) throw Error(ErrorCode::kInvalidArgument, "M and R must be positive");
  const std::size_t n = m + r - 1;
  if (pts.size() != n) {
    std::ostringstream os;
    os << "F(" << m << "," << r << ") needs " << n << " points, got " << pts.size();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }

  ExactTransformSet ts;
  ts.output_size = m;
  ts.filter_size = r;
  ts.tile_size = n;
  ts.points = pts;
  ts.at = Matrix<Rational>(m, n);
  ts.g = Matrix<Rational>(n, r);
  ts.bt = Matrix<Rational>(n, n);

  const Matrix<Rational> inv = vandermonde_inverse(pts);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational scale = abs(lagrange_denominator(pts, j));
    if (pts[j].is_infinite()) {
      ts.at(m - 1, j) = 1;
      ts.g(j, r - 1) = 1;
    } else {
      const Rational& s = pts[j].value();
      for (std::size_t i = 0; i < m; ++i) ts.at(i, j) = power(s, i);
      for (std::size_t c = 0; c < r; ++c) ts.g(j, c) = power(s, c) / scale;
    }
    for (std::size_t i = 0; i < n; ++i) ts.bt(j, i) = inv(i, j) * scale;
  }

  BigInt lcm(1);
  for (const auto& e : ts.g.data()) lcm = boost::integer::lcm(lcm, BigInt(denominator(e)));
  ts.alpha = Rational(1, lcm);
  ts.gprime = Matrix<BigInt>(n, r);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < r; ++c) {
      const Rational scaled = ts.g(j, c) * lcm;
      assert(denominator(scaled) == 1);
      ts.gprime(j, c) = numerator(scaled);
    }
  return ts;
}

ExactTransformSet derive_transforms(std::size_t m, std::size_t r) {
  return derive_transforms(m, r, default_points(m + r - 1));
}

std::vector<BigInt> transform_denominators(const ExactTransformSet& ts) {
  std::vector<BigInt> dens;
  auto collect = [&](const Matrix<Rational>& mat) {
    for (const auto& e : mat.data()) {
      const BigInt d = denominator(e);
      if (d != 1) dens.push_back(d);
    }
  };
  collect(ts.g);
  collect(ts.bt);
  collect(ts.at);
  std::sort(dens.begin(), dens.end());
  dens.erase(std::unique(dens.begin(), dens.end()), dens.end());
  return dens;
}

std::optional<ModulusConflict> find_modulus_conflict(const ExactTransformSet& ts,
                                                     std::int64_t modulus) {
  BigInt lcm(1);
  for (const auto& d : transform_denominators(ts)) lcm = boost::integer::lcm(lcm, d);
  const auto g = static_cast<std::int64_t>(BigInt(boost::integer::gcd(lcm, BigInt(modulus))));
  if (g == 1) return std::nullopt;
  std::int64_t p = 2;
  while (g % p != 0) ++p;
  return ModulusConflict{lcm, p};
}

std::optional<ModulusConflict> find_modulus_conflict(const ExactTransformSet& ts, Modulus m) {
  return find_modulus_conflict(ts, static_cast<std::int64_t>(m.value()));
}

bool check_modulus_compatibility(const ExactTransformSet& ts, Modulus m) {
  return !find_modulus_conflict(ts, m).has_value();
}

std::int32_t reduce_rational(const Rational& value, Modulus m) {
  const std::int64_t num = m.reduce(numerator(value));
  const std::int64_t inv = mod_inverse(BigInt(denominator(value)), m).value;
  return m.reduce(num * inv);
}

Matrix<std::int32_t> reduce_matrix(const Matrix<Rational>& mat, Modulus m) {
  Matrix<std::int32_t> out(mat.rows(), mat.cols());
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j) out(i, j) = reduce_rational(mat(i, j), m);
  return out;
}

ModularTransformSet reduce_transforms_mod(const ExactTransformSet& ts, Modulus m) {
  if (const auto conflict = find_modulus_conflict(ts, m)) {
    std::ostringstream os;
    os << "modulus " << m.value() << " shares factor " << conflict->prime_factor << " with "
       << conflict->denominator;
    throw Error(ErrorCode::kNotCoprime, os.str());
  }
  return ModularTransformSet{m,
                             ts.output_size,
                             ts.filter_size,
                             ts.tile_size,
                             reduce_matrix(ts.at, m),
                             reduce_matrix(ts.g, m),
                             reduce_matrix(ts.bt, m)};
}

int ceil_log2(const BigInt& x) {
  if (x < 1) throw Error(ErrorCode::kInvalidArgument, "ceil_log2 needs x >= 1");
  const auto floor_log = static_cast<int>(boost::multiprecision::msb(x));
  return (x == (BigInt(1) << floor_log)) ? floor_log : floor_log + 1;
}

DataWidthReport data_width_analysis(const ExactTransformSet& ts, int input_bits) {
  if (input_bits < 2) throw Error(ErrorCode::kInvalidArgument, "input_bits must be >= 2");
  const auto n = static_cast<std::int64_t>(ts.tile_size);

  BigInt g_trace = 0;
  BigInt lmax = 0;
  for (std::size_t j = 0; j < ts.gprime.rows(); ++j) {
    BigInt l1 = 0;
    for (const auto& e : ts.gprime.row(j)) {
      g_trace += e * e;
      l1 += abs(e);
    }
    lmax = std::max(lmax, l1);
  }
  Rational b_trace = 0;
  for (const auto& e : ts.bt.data()) b_trace += e * e;

  DataWidthReport report;
  report.filter_magnification = static_cast<double>(Rational(g_trace, n));
  report.input_magnification = static_cast<double>(b_trace / n);
  report.max_filter_row_l1 = lmax;
  const BigInt peak = lmax * lmax * ((BigInt(1) << (input_bits - 1)) - 1);
  report.required_bits = 1 + ceil_log2(peak);
  return report;
}

Rational arithmetic_reduction(std::int64_t m, std::int64_t r, std::int64_t n_moduli) {
  if (m < 1 || r < 1 || n_moduli < 1)
    throw Error(ErrorCode::kInvalidArgument, "M, R and n must be positive");
  const std::int64_t n = m + r - 1;
  return Rational(BigInt(m * m * r * r), BigInt(n * n * n_moduli));
}

}  // namespace rnsw
