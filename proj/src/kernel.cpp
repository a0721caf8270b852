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

#include "rnsw/kernel.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rnsw/error.hpp"

namespace rnsw {

namespace {

constexpr std::int64_t kInt8Bound = 128;
constexpr std::int64_t kInt32Max = std::numeric_limits<std::int32_t>::max();

[[maybe_unused]] bool in_int8_range(std::span<const std::int32_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::int32_t x) { return x >= -128 && x <= 127; });
}

}  // namespace

template <typename B>
void mul_mod(const std::int32_t* a, std::size_t rows, std::size_t inner, const B* b,
             std::size_t cols, Modulus m, std::int64_t a_bound, std::int64_t b_bound,
             std::int32_t* out) {
  const std::int64_t per_term = std::max<std::int64_t>(1, a_bound * b_bound);
  // Folded partial sums are at most m/2, so they take the place of one term.
  const auto chunk = static_cast<std::size_t>(std::max<std::int64_t>(1, kInt32Max / per_term - 1));
  for (std::size_t i = 0; i < rows; ++i) {
    std::int32_t* orow = out + i * cols;
    std::fill(orow, orow + cols, 0);
    const std::int32_t* arow = a + i * inner;
    std::size_t terms = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      const std::int32_t aik = arow[k];
      if (aik == 0) continue;
      if (terms == chunk) {
        for (std::size_t j = 0; j < cols; ++j) orow[j] = m.reduce32(orow[j]);
        terms = 0;
      }
      const B* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) orow[j] += aik * static_cast<std::int32_t>(brow[j]);
      ++terms;
    }
    for (std::size_t j = 0; j < cols; ++j) orow[j] = m.reduce32(orow[j]);
  }
}

template void mul_mod(const std::int32_t*, std::size_t, std::size_t, const std::int8_t*,
                      std::size_t, Modulus, std::int64_t, std::int64_t, std::int32_t*);
template void mul_mod(const std::int32_t*, std::size_t, std::size_t, const std::int32_t*,
                      std::size_t, Modulus, std::int64_t, std::int64_t, std::int32_t*);

void mul_mod(std::span<const std::int32_t> a, std::size_t rows, std::size_t inner,
             std::span<const std::int32_t> b, std::size_t cols, Modulus m, std::int64_t a_bound,
             std::int64_t b_bound, std::span<std::int32_t> out) {
  if (a.size() < rows * inner || b.size() < inner * cols || out.size() < rows * cols)
    throw Error(ErrorCode::kShapeMismatch, "mul_mod operand too small");
  mul_mod(a.data(), rows, inner, b.data(), cols, m, a_bound, b_bound, out.data());
}

namespace {

// out = C x C^T applied to lane-interleaved tiles: x is in_rows x in_rows x
// lanes, out is c_rows x c_rows x lanes, C is c_rows x in_rows.
template <typename In>
void sandwich(const Matrix<std::int32_t>& c, const In* x, std::int64_t x_bound, std::size_t lanes,
              Modulus m, std::int32_t* out, std::vector<std::int32_t>& scratch) {
  const std::size_t rows = c.rows(), inner = c.cols();
  const std::int64_t h = m.half();
  scratch.resize(rows * inner * lanes);
  // Left factor: (rows x inner) * (inner x inner*lanes).
  mul_mod(c.data().data(), rows, inner, x, inner * lanes, m, h, x_bound, scratch.data());
  // Right factor per output row i: (rows x inner) * (inner x lanes).
  for (std::size_t i = 0; i < rows; ++i)
    mul_mod(c.data().data(), rows, inner, scratch.data() + i * inner * lanes, lanes, m, h, h,
            out + i * rows * lanes);
}

}  // namespace

TileKernel::TileKernel(ModularTransformSet mt) : mt_(std::move(mt)) {}

void TileKernel::filter_transform(std::span<const std::int32_t> g, std::span<std::int32_t> out) const {
  assert(g.size() >= mt_.filter_size * mt_.filter_size && out.size() >= mt_.tile_size * mt_.tile_size);
  std::vector<std::int32_t> scratch;
  sandwich(mt_.g, g.data(), kInt8Bound, 1, mt_.modulus, out.data(), scratch);
}

void TileKernel::input_transform(std::span<const std::int32_t> d, std::span<std::int32_t> out) const {
  assert(d.size() >= mt_.tile_size * mt_.tile_size && out.size() >= mt_.tile_size * mt_.tile_size);
  std::vector<std::int32_t> scratch;
  sandwich(mt_.bt, d.data(), kInt8Bound, 1, mt_.modulus, out.data(), scratch);
}

void TileKernel::backward_transform(std::span<const std::int32_t> t, std::span<std::int32_t> out) const {
  assert(t.size() >= mt_.tile_size * mt_.tile_size &&
         out.size() >= mt_.output_size * mt_.output_size);
  std::vector<std::int32_t> scratch;
  sandwich(mt_.at, t.data(), mt_.modulus.half(), 1, mt_.modulus, out.data(), scratch);
}

void TileKernel::filter_transform(const std::int8_t* g, std::size_t lanes, std::int32_t* out,
                                  std::vector<std::int32_t>& scratch) const {
  sandwich(mt_.g, g, kInt8Bound, lanes, mt_.modulus, out, scratch);
}

void TileKernel::input_transform(const std::int8_t* d, std::size_t lanes, std::int32_t* out,
                                 std::vector<std::int32_t>& scratch) const {
  sandwich(mt_.bt, d, kInt8Bound, lanes, mt_.modulus, out, scratch);
}

void TileKernel::backward_transform(const std::int32_t* t, std::size_t lanes, std::int32_t* out,
                                    std::vector<std::int32_t>& scratch) const {
  sandwich(mt_.at, t, mt_.modulus.half(), lanes, mt_.modulus, out, scratch);
}

Tile TileKernel::filter_transform(const Tile& g) const {
  if (g.rows() != mt_.filter_size || g.cols() != mt_.filter_size)
    throw Error(ErrorCode::kShapeMismatch, "filter tile must be R x R");
  assert(in_int8_range(g.data()));
  Tile out(mt_.tile_size, mt_.tile_size);
  filter_transform(g.data(), out.data());
  return out;
}

Tile TileKernel::input_transform(const Tile& d) const {
  if (d.rows() != mt_.tile_size || d.cols() != mt_.tile_size)
    throw Error(ErrorCode::kShapeMismatch, "input tile must be N x N");
  assert(in_int8_range(d.data()));
  Tile out(mt_.tile_size, mt_.tile_size);
  input_transform(d.data(), out.data());
  return out;
}

Tile TileKernel::backward_transform(const Tile& t) const {
  if (t.rows() != mt_.tile_size || t.cols() != mt_.tile_size)
    throw Error(ErrorCode::kShapeMismatch, "Winograd-domain tile must be N x N");
  assert(std::all_of(t.data().begin(), t.data().end(),
                     [&](std::int32_t x) { return mt_.modulus.contains(x); }));
  Tile out(mt_.output_size, mt_.output_size);
  backward_transform(t.data(), out.data());
  return out;
}

Tile TileKernel::tile_conv(const Tile& g, const Tile& d) const {
  const Tile u = filter_transform(g);
  Tile v = input_transform(d);
  for (std::size_t i = 0; i < v.data().size(); ++i)
    v.data()[i] = mt_.modulus.reduce(static_cast<std::int64_t>(u.data()[i]) * v.data()[i]);
  return backward_transform(v);
}

Tile filter_transform_mod(const Tile& g, const ModularTransformSet& mt) {
  return TileKernel(mt).filter_transform(g);
}
Tile input_transform_mod(const Tile& d, const ModularTransformSet& mt) {
  return TileKernel(mt).input_transform(d);
}
Tile backward_transform_mod(const Tile& t, const ModularTransformSet& mt) {
  return TileKernel(mt).backward_transform(t);
}
Tile tile_conv_mod(const Tile& g, const Tile& d, const ModularTransformSet& mt) {
  return TileKernel(mt).tile_conv(g, d);
}

Matrix<std::int64_t> rns_tile_conv(const Tile& g, const Tile& d, const RnsSystem& sys,
                                   std::span<const ModularTransformSet> mts) {
  if (mts.size() != sys.size())
    throw Error(ErrorCode::kSystemMismatch, "one transform set per modulus required");
  for (std::size_t i = 0; i < mts.size(); ++i)
    if (!(mts[i].modulus == sys.moduli()[i]))
      throw Error(ErrorCode::kSystemMismatch, "transform sets out of modulus order");

  const auto r = static_cast<std::int64_t>(g.rows());
  const BigInt worst = BigInt(r * r) * kInt8Bound * kInt8Bound;
  if (worst > sys.signed_bound()) {
    std::ostringstream os;
    os << "tile worst case " << worst << " exceeds signed bound " << sys.signed_bound();
    throw Error(ErrorCode::kDynamicRangeExceeded, os.str());
  }

  std::vector<Tile> per_modulus;
  per_modulus.reserve(mts.size());
  for (const auto& mt : mts) per_modulus.push_back(tile_conv_mod(g, d, mt));

  const std::size_t m = per_modulus.front().rows();
  Matrix<std::int64_t> out(m, m);
  std::vector<std::int32_t> digits(sys.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < sys.size(); ++k) digits[k] = per_modulus[k](i, j);
      out(i, j) = static_cast<std::int64_t>(
          sys.mrc_reconstruct(RnsVector({sys.moduli().begin(), sys.moduli().end()}, digits)));
    }
  return out;
}

}  // namespace rnsw
