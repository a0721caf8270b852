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

// Reference implementations used only by the tests. Each one is written
// independently of the library code it checks.

#include <cstdint>
#include <vector>

#include "rnsw/bigint.hpp"
#include "rnsw/layer.hpp"
#include "rnsw/matrix.hpp"
#include "rnsw/random.hpp"

namespace rnsw::oracle {

/// Balanced residue through the non-negative remainder.
inline std::int64_t balanced_mod(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  auto v = static_cast<std::int64_t>(r);
  return v > (m - 1) / 2 ? v - m : v;
}
inline std::int64_t balanced_mod(std::int64_t x, std::int64_t m) {
  return balanced_mod(BigInt(x), m);
}

/// Inverse by exhaustive search; for moduli up to a few thousand.
inline std::int64_t brute_inverse(std::int64_t x, std::int64_t m) {
  const std::int64_t xr = ((x % m) + m) % m;
  for (std::int64_t y = 1; y < m; ++y)
    if (xr * y % m == 1) return balanced_mod(y, m);
  return 0;
}

/// Chinese-remainder reconstruction into [-(D-1)/2, (D-1)/2].
inline BigInt crt(const std::vector<std::int64_t>& digits, const std::vector<std::int64_t>& moduli) {
  BigInt d = 1;
  for (auto m : moduli) d *= m;
  BigInt x = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const BigInt mi = d / moduli[i];
    const std::int64_t inv = brute_inverse(static_cast<std::int64_t>(mi % moduli[i]), moduli[i]);
    x += BigInt(digits[i]) * mi * inv;
  }
  x %= d;
  if (x < 0) x += d;
  if (x > (d - 1) / 2) x -= d;
  return x;
}

/// Valid-mode correlation of an r x r filter over an n x n tile.
inline Matrix<std::int64_t> correlate(const Matrix<std::int32_t>& g, const Matrix<std::int32_t>& d) {
  const std::size_t r = g.rows(), m = d.rows() - r + 1;
  Matrix<std::int64_t> y(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::int64_t s = 0;
      for (std::size_t u = 0; u < r; ++u)
        for (std::size_t v = 0; v < r; ++v) s += std::int64_t{g(u, v)} * d(i + u, j + v);
      y(i, j) = s;
    }
  return y;
}

/// Naive nested-loop convolution with zero padding and stride.
inline ConvOutput conv(const LayerSpec& s, const QuantizedTensor& w, const QuantizedTensor& x) {
  const std::size_t oh = s.out_height(), ow = s.out_width();
  ConvOutput y{{s.batch, oh, ow, s.filters}, std::vector<std::int32_t>(s.batch * oh * ow * s.filters)};
  for (std::size_t b = 0; b < s.batch; ++b)
    for (std::size_t oy = 0; oy < oh; ++oy)
      for (std::size_t ox = 0; ox < ow; ++ox)
        for (std::size_t k = 0; k < s.filters; ++k) {
          std::int64_t acc = 0;
          for (std::size_t u = 0; u < s.kernel; ++u)
            for (std::size_t v = 0; v < s.kernel; ++v) {
              const auto iy = static_cast<std::int64_t>(oy * s.stride + u) - static_cast<std::int64_t>(s.padding);
              const auto ix = static_cast<std::int64_t>(ox * s.stride + v) - static_cast<std::int64_t>(s.padding);
              if (iy < 0 || ix < 0 || iy >= static_cast<std::int64_t>(s.height) ||
                  ix >= static_cast<std::int64_t>(s.width))
                continue;
              for (std::size_t c = 0; c < s.channels; ++c)
                acc += std::int64_t{x.at(b, static_cast<std::size_t>(iy), static_cast<std::size_t>(ix), c)} *
                       w.at(u, v, c, k);
            }
          y.data[((b * oh + oy) * ow + ox) * s.filters + k] = static_cast<std::int32_t>(acc);
        }
  return y;
}

inline Matrix<std::int32_t> random_tile(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<std::int32_t> t(rows, cols);
  for (auto& v : t.data()) v = rng.int8();
  return t;
}

inline Matrix<Rational> to_rational(const Matrix<std::int32_t>& a) {
  Matrix<Rational> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace rnsw::oracle
