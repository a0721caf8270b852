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

#include "rnsw/residue.hpp"

#include <numeric>
#include <sstream>

#include "rnsw/error.hpp"

namespace rnsw {

namespace {

// Returns x^{-1} mod m in [0, m), or 0 when gcd(x, m) != 1.
std::int64_t inverse_unsigned(std::int64_t x, std::int64_t m) {
  std::int64_t a = ((x % m) + m) % m;
  std::int64_t b = m;
  std::int64_t u = 1, v = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    a -= q * b;
    std::swap(a, b);
    u -= q * v;
    std::swap(u, v);
  }
  if (a != 1) return 0;
  return ((u % m) + m) % m;
}

}  // namespace

Modulus::Modulus(std::int64_t m) {
  if (m < 3 || m > kMax || m % 2 == 0) {
    std::ostringstream os;
    os << "modulus " << m << " must be odd and within [3, " << kMax << "]";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  m_ = static_cast<std::int32_t>(m);
  half_ = (m_ - 1) / 2;
  inverse_ = 1.0 / m_;
}

std::int32_t Modulus::reduce(const BigInt& x) const {
  BigInt r = x % m_;  // truncated: sign follows x
  return reduce(static_cast<std::int64_t>(r));
}

Residue mod_reduce(std::int64_t x, Modulus m) { return {m.reduce(x), m}; }

Residue mod_reduce(const BigInt& x, Modulus m) { return {m.reduce(x), m}; }

Residue mod_inverse(std::int64_t x, Modulus m) {
  const std::int64_t inv = inverse_unsigned(x, m.value());
  if (inv == 0) {
    std::ostringstream os;
    os << x << " has no inverse modulo " << m.value() << " (gcd = "
       << std::gcd(x, static_cast<std::int64_t>(m.value())) << ")";
    throw Error(ErrorCode::kNotCoprime, os.str());
  }
  return mod_reduce(inv, m);
}

Residue mod_inverse(const BigInt& x, Modulus m) {
  const auto r = static_cast<std::int64_t>(BigInt(x % m.value()));
  if (r == 0 || std::gcd(r, static_cast<std::int64_t>(m.value())) != 1) {
    std::ostringstream os;
    os << x << " has no inverse modulo " << m.value();
    throw Error(ErrorCode::kNotCoprime, os.str());
  }
  return mod_inverse(r, m);
}

RnsVector::RnsVector(std::vector<Modulus> moduli, std::vector<std::int32_t> digits)
    : moduli_(std::move(moduli)), digits_(std::move(digits)) {
  if (moduli_.size() != digits_.size())
    throw Error(ErrorCode::kShapeMismatch, "one digit per modulus required");
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (!moduli_[i].contains(digits_[i]))
      throw Error(ErrorCode::kOutOfRange, "digit outside balanced range");
}

namespace {

template <typename Op>
RnsVector componentwise(const RnsVector& a, const RnsVector& b, Op op) {
  if (a.size() != b.size() ||
      !std::equal(a.moduli().begin(), a.moduli().end(), b.moduli().begin()))
    throw Error(ErrorCode::kSystemMismatch, "operands belong to different RNS");
  std::vector<std::int32_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Modulus m = a.moduli()[i];
    out[i] = m.reduce(op(static_cast<std::int64_t>(a.digits()[i]),
                         static_cast<std::int64_t>(b.digits()[i])));
  }
  return {std::vector<Modulus>(a.moduli().begin(), a.moduli().end()), std::move(out)};
}

}  // namespace

RnsVector rns_add(const RnsVector& a, const RnsVector& b) {
  return componentwise(a, b, [](std::int64_t x, std::int64_t y) { return x + y; });
}
RnsVector rns_sub(const RnsVector& a, const RnsVector& b) {
  return componentwise(a, b, [](std::int64_t x, std::int64_t y) { return x - y; });
}
RnsVector rns_mul(const RnsVector& a, const RnsVector& b) {
  return componentwise(a, b, [](std::int64_t x, std::int64_t y) { return x * y; });
}

RnsSystem::RnsSystem(std::vector<Modulus> moduli) : moduli_(std::move(moduli)) {
  const std::size_t n = moduli_.size();
  if (n == 0 || n > kMaxModuli)
    throw Error(ErrorCode::kInvalidArgument, "an RNS needs between 1 and 16 moduli");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::gcd(moduli_[i].value(), moduli_[j].value()) != 1) {
        std::ostringstream os;
        os << "moduli " << moduli_[i].value() << " and " << moduli_[j].value()
           << " are not coprime";
        throw Error(ErrorCode::kNotCoprime, os.str());
      }

  inverse_.assign(n * n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      inverse_[j * n + k] = mod_inverse(moduli_[j].value(), moduli_[k]).value;

  range_ = 1;
  for (const Modulus m : moduli_) range_ *= m.value();
  signed_bound_ = (range_ - 1) / 2;
  fits_i64_ = range_ < (BigInt(1) << 62);
  if (fits_i64_) bound_i64_ = static_cast<std::int64_t>(signed_bound_);
}

namespace {
std::vector<Modulus> to_moduli(std::span<const std::int64_t> values) {
  std::vector<Modulus> out;
  out.reserve(values.size());
  for (const auto v : values) out.emplace_back(v);
  return out;
}
}  // namespace

RnsSystem::RnsSystem(std::span<const std::int64_t> moduli) : RnsSystem(to_moduli(moduli)) {}

RnsSystem::RnsSystem(std::initializer_list<std::int64_t> moduli)
    : RnsSystem(std::span<const std::int64_t>(moduli.begin(), moduli.size())) {}

RnsVector RnsSystem::to_rns(const BigInt& x) const {
  if (abs(x) > signed_bound_) {
    std::ostringstream os;
    os << x << " exceeds the signed bound " << signed_bound_;
    throw Error(ErrorCode::kOutOfRange, os.str());
  }
  std::vector<std::int32_t> digits;
  digits.reserve(moduli_.size());
  for (const Modulus m : moduli_) digits.push_back(m.reduce(x));
  return {moduli_, std::move(digits)};
}

RnsVector RnsSystem::to_rns(std::int64_t x) const { return to_rns(BigInt(x)); }

bool RnsSystem::same_moduli(std::span<const Modulus> other) const {
  return other.size() == moduli_.size() &&
         std::equal(other.begin(), other.end(), moduli_.begin());
}

void RnsSystem::check_vector(const RnsVector& r) const {
  if (!same_moduli(r.moduli()))
    throw Error(ErrorCode::kSystemMismatch, "residue vector belongs to a different RNS");
}

std::vector<std::int32_t> RnsSystem::mixed_radix_digits(const RnsVector& r) const {
  const std::size_t n = moduli_.size();
  std::vector<std::int32_t> a(r.digits().begin(), r.digits().end());
  // t_k = a_k once all lower digits have been peeled off.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j)
      a[j] = moduli_[j].reduce(static_cast<std::int64_t>(a[j] - a[k]) * inverse_[k * n + j]);
  return a;
}

BigInt RnsSystem::mrc_reconstruct(const RnsVector& r) const {
  check_vector(r);
  const auto t = mixed_radix_digits(r);
  // Balanced digits give sum |t_k| P_k <= (D - 1) / 2, so no final fold.
  BigInt x = t.back();
  for (std::size_t k = t.size() - 1; k-- > 0;) x = x * moduli_[k].value() + t[k];
  assert(abs(x) <= signed_bound_);
  return x;
}

void RnsSystem::reconstruct_many(std::span<const std::int16_t* const> digits, std::size_t count,
                                 std::int64_t* out) const {
  assert(fits_i64_ && digits.size() == moduli_.size());
  // Same recurrence as reconstruct(), run one modulus pair at a time over a
  // block of elements so the inner loops vectorize.
  constexpr std::size_t kBlock = 256;
  const std::size_t n = moduli_.size();
  std::int32_t a[kMaxModuli][kBlock];
  for (std::size_t e0 = 0; e0 < count; e0 += kBlock) {
    const std::size_t len = std::min(kBlock, count - e0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t e = 0; e < len; ++e) a[i][e] = digits[i][e0 + e];
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = k + 1; j < n; ++j) {
        const Modulus mj = moduli_[j];
        const std::int32_t inv = inverse_[k * n + j];
        for (std::size_t e = 0; e < len; ++e) a[j][e] = mj.reduce32((a[j][e] - a[k][e]) * inv);
      }
    for (std::size_t e = 0; e < len; ++e) out[e0 + e] = a[n - 1][e];
    for (std::size_t k = n - 1; k-- > 0;) {
      const std::int64_t mk = moduli_[k].value();
      for (std::size_t e = 0; e < len; ++e) out[e0 + e] = out[e0 + e] * mk + a[k][e];
    }
  }
}

BigInt RnsSystem::mrc_reconstruct_unsigned(const RnsVector& r) const {
  BigInt x = mrc_reconstruct(r);
  if (x < 0) x += range_;
  return x;
}

}  // namespace rnsw
