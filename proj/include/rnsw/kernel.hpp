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
#include <span>
#include <vector>

#include "rnsw/matrix.hpp"
#include "rnsw/residue.hpp"
#include "rnsw/transforms.hpp"

namespace rnsw {

/// R x R filter, N x N input patch or M x M output tile. Filter and input
/// entries start in int8 range; after a transform they are balanced residues.
using Tile = Matrix<std::int32_t>;

/// out = (a * b) reduced mod m, with a: rows x inner and b: inner x cols,
/// both row-major, |a| <= a_bound and |b| <= b_bound. Sums accumulate in
/// int32 and are folded after every floor((2^31 - 1) / (a_bound * b_bound)) - 1
/// terms.
template <typename B>
void mul_mod(const std::int32_t* a, std::size_t rows, std::size_t inner, const B* b,
             std::size_t cols, Modulus m, std::int64_t a_bound, std::int64_t b_bound,
             std::int32_t* out);

void mul_mod(std::span<const std::int32_t> a, std::size_t rows, std::size_t inner,
             std::span<const std::int32_t> b, std::size_t cols, Modulus m, std::int64_t a_bound,
             std::int64_t b_bound, std::span<std::int32_t> out);

/// Single-modulus Winograd tile engine. Each transform X -> C X C^T is two
/// modular matrix products.
class TileKernel {
 public:
  explicit TileKernel(ModularTransformSet mt);

  const ModularTransformSet& transforms() const noexcept { return mt_; }
  Modulus modulus() const noexcept { return mt_.modulus; }
  std::size_t output_size() const noexcept { return mt_.output_size; }
  std::size_t filter_size() const noexcept { return mt_.filter_size; }
  std::size_t tile_size() const noexcept { return mt_.tile_size; }

  /// G g G^T for an R x R int8-range filter; writes N*N residues.
  void filter_transform(std::span<const std::int32_t> g, std::span<std::int32_t> out) const;
  /// B^T d B for an N x N int8-range patch; writes N*N residues.
  void input_transform(std::span<const std::int32_t> d, std::span<std::int32_t> out) const;
  /// A^T t A for an N x N residue tile; writes M*M residues.
  void backward_transform(std::span<const std::int32_t> t, std::span<std::int32_t> out) const;

  /// Lane-batched forms: `lanes` independent tiles interleaved innermost,
  /// e.g. an R x R x (C*K) weight block or an N x N x C input patch.
  /// `scratch` is resized as needed.
  void filter_transform(const std::int8_t* g, std::size_t lanes, std::int32_t* out,
                        std::vector<std::int32_t>& scratch) const;
  void input_transform(const std::int8_t* d, std::size_t lanes, std::int32_t* out,
                       std::vector<std::int32_t>& scratch) const;
  void backward_transform(const std::int32_t* t, std::size_t lanes, std::int32_t* out,
                          std::vector<std::int32_t>& scratch) const;

  Tile filter_transform(const Tile& g) const;
  Tile input_transform(const Tile& d) const;
  Tile backward_transform(const Tile& t) const;
  Tile tile_conv(const Tile& g, const Tile& d) const;

 private:
  ModularTransformSet mt_;
};

Tile filter_transform_mod(const Tile& g, const ModularTransformSet& mt);
Tile input_transform_mod(const Tile& d, const ModularTransformSet& mt);
Tile backward_transform_mod(const Tile& t, const ModularTransformSet& mt);
/// A^T [(G g G^T) (.) (B^T d B)] A mod m: the valid-mode correlation of g
/// over d, reduced mod m.
Tile tile_conv_mod(const Tile& g, const Tile& d, const ModularTransformSet& mt);

/// Runs tile_conv_mod once per modulus and recombines each output entry by
/// MRC. `mts` must follow the order of sys.moduli(). Throws
/// Error(kDynamicRangeExceeded) unless R^2 * 128^2 <= signed_bound.
Matrix<std::int64_t> rns_tile_conv(const Tile& g, const Tile& d, const RnsSystem& sys,
                                   std::span<const ModularTransformSet> mts);

}  // namespace rnsw
