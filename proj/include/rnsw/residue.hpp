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

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rnsw/bigint.hpp"

namespace rnsw {

/// An odd modulus 3 <= m <= 32767. Residues modulo m are kept in the
/// balanced range [-(m-1)/2, (m-1)/2], so an 8-bit modulus (m <= 255) has
/// residues that fit int8 and a 16-bit modulus residues that fit int16.
class Modulus {
 public:
  static constexpr std::int32_t kMax = 32767;

  explicit Modulus(std::int64_t m);

  std::int32_t value() const noexcept { return m_; }
  std::int32_t half() const noexcept { return half_; }
  /// True when every residue fits a signed byte.
  bool is_8bit() const noexcept { return m_ <= 255; }

  /// Balanced reduction of a machine integer.
  std::int32_t reduce(std::int64_t x) const noexcept {
    auto r = static_cast<std::int32_t>(x % m_);
    if (r > half_) r -= m_;
    else if (r < -half_) r += m_;
    return r;
  }
  std::int32_t reduce(const BigInt& x) const;

  /// Balanced reduction for any int32 via a rounded floating-point quotient.
  /// Exact: |x / m| < 2^31 keeps the quotient error far below the 1/(2m)
  /// gap to a rounding boundary, and odd m rules out exact ties.
  /// Branch-free, so loops over it vectorize.
  std::int32_t reduce32(std::int32_t x) const noexcept {
    constexpr double kRound = 0x1.8p52;
    const double q = (static_cast<double>(x) * inverse_ + kRound) - kRound;
    return static_cast<std::int32_t>(static_cast<double>(x) - q * m_);
  }

  bool contains(std::int64_t r) const noexcept { return r >= -half_ && r <= half_; }

  friend bool operator==(Modulus a, Modulus b) noexcept { return a.m_ == b.m_; }

 private:
  std::int32_t m_;
  std::int32_t half_;
  double inverse_;
};

struct Residue {
  std::int32_t value;
  Modulus modulus;

  /// The same class expressed in [0, m).
  std::int32_t unsigned_value() const noexcept {
    return value < 0 ? value + modulus.value() : value;
  }
  friend bool operator==(const Residue&, const Residue&) = default;
};

Residue mod_reduce(std::int64_t x, Modulus m);
Residue mod_reduce(const BigInt& x, Modulus m);

/// Inverse by the extended Euclidean algorithm (moduli may be composite).
/// Throws Error(kNotCoprime) when gcd(x, m) != 1.
Residue mod_inverse(std::int64_t x, Modulus m);
Residue mod_inverse(const BigInt& x, Modulus m);

class RnsSystem;

/// One residue digit per modulus of the system it was produced by.
class RnsVector {
 public:
  RnsVector() = default;
  RnsVector(std::vector<Modulus> moduli, std::vector<std::int32_t> digits);

  std::size_t size() const noexcept { return digits_.size(); }
  std::span<const Modulus> moduli() const noexcept { return moduli_; }
  std::span<const std::int32_t> digits() const noexcept { return digits_; }
  Residue operator[](std::size_t i) const { return {digits_[i], moduli_[i]}; }

  friend bool operator==(const RnsVector&, const RnsVector&) = default;

 private:
  std::vector<Modulus> moduli_;
  std::vector<std::int32_t> digits_;
};

RnsVector rns_add(const RnsVector& a, const RnsVector& b);
RnsVector rns_sub(const RnsVector& a, const RnsVector& b);
RnsVector rns_mul(const RnsVector& a, const RnsVector& b);

/// A set of pairwise-coprime odd moduli. Immutable after construction; the
/// mixed-radix inverses m_j^{-1} mod m_k (j < k) are precomputed here.
class RnsSystem {
 public:
  explicit RnsSystem(std::vector<Modulus> moduli);
  explicit RnsSystem(std::span<const std::int64_t> moduli);
  RnsSystem(std::initializer_list<std::int64_t> moduli);

  std::span<const Modulus> moduli() const noexcept { return moduli_; }
  std::size_t size() const noexcept { return moduli_.size(); }
  const BigInt& dynamic_range() const noexcept { return range_; }
  const BigInt& signed_bound() const noexcept { return signed_bound_; }
  /// signed_bound as int64; valid because at most a handful of 15-bit
  /// moduli are practical, but checked at construction.
  std::int64_t signed_bound_i64() const noexcept { return bound_i64_; }
  bool fits_i64() const noexcept { return fits_i64_; }

  /// Throws Error(kOutOfRange) when |x| > signed_bound.
  RnsVector to_rns(const BigInt& x) const;
  RnsVector to_rns(std::int64_t x) const;

  /// Mixed Radix Conversion into [-signed_bound, signed_bound].
  BigInt mrc_reconstruct(const RnsVector& r) const;
  /// Same class in [0, D).
  BigInt mrc_reconstruct_unsigned(const RnsVector& r) const;

  /// Hot-path MRC on raw digits (one per modulus, same order), each in the
  /// balanced range of its modulus. Requires fits_i64().
  std::int64_t reconstruct(std::span<const std::int32_t> digits) const noexcept {
    assert(fits_i64_ && digits.size() == moduli_.size());
    const std::size_t n = moduli_.size();
    std::int32_t a[kMaxModuli];
    for (std::size_t i = 0; i < n; ++i) a[i] = digits[i];
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = k + 1; j < n; ++j)
        a[j] = moduli_[j].reduce32((a[j] - a[k]) * inverse_[k * n + j]);
    std::int64_t x = a[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) x = x * moduli_[k].value() + a[k];
    return x;
  }

  /// reconstruct() for `count` elements at once; digits[i][e] is the digit
  /// of element e for modulus i. Requires fits_i64().
  void reconstruct_many(std::span<const std::int16_t* const> digits, std::size_t count,
                        std::int64_t* out) const;

  bool same_moduli(std::span<const Modulus> other) const;

  friend bool operator==(const RnsSystem& a, const RnsSystem& b) {
    return a.moduli_ == b.moduli_;
  }

  static constexpr std::size_t kMaxModuli = 16;

 private:
  void check_vector(const RnsVector& r) const;
  std::vector<std::int32_t> mixed_radix_digits(const RnsVector& r) const;

  std::vector<Modulus> moduli_;
  std::vector<std::int32_t> inverse_;  // n*n, inverse_[j*n+k] = m_j^{-1} mod m_k
  BigInt range_;
  BigInt signed_bound_;
  std::int64_t bound_i64_ = 0;
  bool fits_i64_ = false;
};

}  // namespace rnsw
