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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rnsw/bigint.hpp"
#include "rnsw/gemm.hpp"
#include "rnsw/kernel.hpp"
#include "rnsw/residue.hpp"
#include "rnsw/transforms.hpp"

namespace rnsw {

using Dims4 = std::array<std::size_t, 4>;

/// Dense int8 tensor with channels innermost: activations are (B, H, W, C),
/// weights (R, R, C, K).
class QuantizedTensor {
 public:
  QuantizedTensor() = default;
  explicit QuantizedTensor(Dims4 dims);
  QuantizedTensor(Dims4 dims, std::vector<std::int8_t> data);

  const Dims4& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<std::int8_t> data() noexcept { return data_; }
  std::span<const std::int8_t> data() const noexcept { return data_; }

  std::size_t index(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) const noexcept {
    return ((i0 * dims_[1] + i1) * dims_[2] + i2) * dims_[3] + i3;
  }
  std::int8_t& at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) {
    return data_[index(i0, i1, i2, i3)];
  }
  std::int8_t at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) const {
    return data_[index(i0, i1, i2, i3)];
  }

  friend bool operator==(const QuantizedTensor&, const QuantizedTensor&) = default;

 private:
  Dims4 dims_{};
  std::vector<std::int8_t> data_;
};

struct LayerSpec {
  std::size_t batch = 1;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;  // C
  std::size_t filters = 0;   // K
  std::size_t kernel = 0;    // R
  std::size_t stride = 1;
  std::size_t padding = 0;
  std::size_t tile = 0;  // M, output tile edge of the Winograd path

  std::size_t out_height() const noexcept { return (height + 2 * padding - kernel) / stride + 1; }
  std::size_t out_width() const noexcept { return (width + 2 * padding - kernel) / stride + 1; }
  Dims4 input_dims() const noexcept { return {batch, height, width, channels}; }
  Dims4 weight_dims() const noexcept { return {kernel, kernel, channels, filters}; }
  Dims4 output_dims() const noexcept { return {batch, out_height(), out_width(), filters}; }

  /// Throws Error(kInvalidArgument) for empty dimensions or a kernel larger
  /// than the padded input, Error(kOverflowRisk) when R*R*C exceeds the exact
  /// int32 accumulation depth.
  void validate() const;
};

struct ConvOutput {
  Dims4 dims{};
  std::vector<std::int32_t> data;

  std::int32_t at(std::size_t b, std::size_t y, std::size_t x, std::size_t k) const {
    return data[((b * dims[1] + y) * dims[2] + x) * dims[3] + k];
  }
  friend bool operator==(const ConvOutput&, const ConvOutput&) = default;
};

/// im2col lowering followed by gemm_acc; exact, zero-padded correlation with
/// any stride. This is the oracle every Winograd path is checked against.
ConvOutput direct_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                       const QuantizedTensor& input);

/// Overlapping N x N input windows at stride M. Window (ty, tx) starts at
/// padded-plane offset (ty*M, tx*M), i.e. at input row ty*M - padding, and
/// produces output rows [ty*M, min(ty*M + M, H_out)).
struct TileGrid {
  std::size_t tile = 0;       // M
  std::size_t tile_size = 0;  // N
  std::size_t padding = 0;
  std::size_t out_height = 0;
  std::size_t out_width = 0;
  std::size_t tile_rows = 0;
  std::size_t tile_cols = 0;

  std::size_t tiles_per_image() const noexcept { return tile_rows * tile_cols; }
};

TileGrid make_tile_grid(std::size_t height, std::size_t width, std::size_t tile,
                        std::size_t kernel, std::size_t padding);

struct Patch {
  std::size_t batch = 0;
  std::size_t tile_row = 0;
  std::size_t tile_col = 0;
  std::size_t out_row = 0;   // first output row covered
  std::size_t out_col = 0;   // first output column covered
  std::size_t out_rows = 0;  // <= M, cropped at the bottom edge
  std::size_t out_cols = 0;
  std::vector<std::int8_t> data;  // N x N x C, zero outside the input
};

/// Copies window (ty, tx) of image b into out (N*N*C bytes).
void extract_patch(const QuantizedTensor& input, const TileGrid& grid, std::size_t b,
                   std::size_t ty, std::size_t tx, std::span<std::int8_t> out);

std::vector<Patch> tile_decompose(const QuantizedTensor& input, std::size_t tile,
                                  std::size_t kernel, std::size_t padding);

/// Exact transforms for F(M x M, R x R) and one tile engine per modulus.
class WinogradPlan {
 public:
  /// Throws Error(kNotCoprime) if a modulus divides a transform denominator.
  WinogradPlan(std::size_t tile, std::size_t kernel, RnsSystem system);
  WinogradPlan(std::size_t tile, std::size_t kernel, RnsSystem system,
               const InterpolationPoints& points);

  std::size_t tile() const noexcept { return exact_.output_size; }
  std::size_t kernel() const noexcept { return exact_.filter_size; }
  std::size_t tile_size() const noexcept { return exact_.tile_size; }
  const RnsSystem& system() const noexcept { return system_; }
  const ExactTransformSet& exact() const noexcept { return exact_; }
  std::span<const TileKernel> kernels() const noexcept { return kernels_; }

 private:
  RnsSystem system_;
  ExactTransformSet exact_;
  std::vector<TileKernel> kernels_;
};

/// Winograd-domain filters of one modulus: N^2 matrices of shape C x K,
/// stored 8-bit when the modulus is 8-bit and 16-bit otherwise.
struct ModulusFilters {
  Modulus modulus;
  std::vector<Int8Matrix> narrow;
  std::vector<Int16Matrix> wide;
};

struct FilterBank {
  std::size_t channels = 0;
  std::size_t filters = 0;
  std::size_t kernel = 0;
  std::vector<ModulusFilters> per_modulus;
};

FilterBank precompute_filter_transforms(const QuantizedTensor& weights, const WinogradPlan& plan);

struct RangeCheck {
  BigInt static_bound;   // R^2 * C * 128^2
  BigInt checked_bound;  // the declared bound when given, else static_bound
  bool fits = false;     // checked_bound <= signed_bound
};

/// A declared bound is the caller's measured or known output magnitude and
/// replaces the static worst case; it is trusted, not verified.
RangeCheck range_check(const LayerSpec& spec, const RnsSystem& sys,
                       std::optional<std::int64_t> declared_bound = std::nullopt);

struct OperationCount {
  std::uint64_t direct_mults = 0;
  std::uint64_t winograd_mults = 0;
  double reduction_ratio = 0;
};

OperationCount count_operations(const LayerSpec& spec, std::size_t n_moduli, std::size_t tile);
OperationCount count_operations(const LayerSpec& spec, const RnsSystem& sys, std::size_t tile);

/// Wall-clock split of one winograd_layer_conv call, in seconds.
struct LayerProfile {
  double input_transform = 0;
  double gemm = 0;
  double backward_transform = 0;
  double mrc = 0;
  double total = 0;
  bool fell_back = false;  // stride != 1 routed to direct_conv
};

struct LayerOptions {
  std::optional<std::int64_t> declared_bound;
  /// With stride != 1: run direct_conv when true, throw
  /// Error(kUnsupportedStride) when false.
  bool allow_fallback = true;
  LayerProfile* profile = nullptr;
};

/// Bit-exact Winograd convolution over the plan's RNS. Input patches are
/// transformed once per modulus and shared by all K filters, the channel
/// reduction of every Winograd position is one GEMM, and the backward
/// transform and MRC run after that reduction.
/// Throws Error(kDynamicRangeExceeded) when range_check fails.
ConvOutput winograd_layer_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                               const QuantizedTensor& input, const WinogradPlan& plan,
                               const FilterBank& filters, const LayerOptions& options = {});

ConvOutput winograd_layer_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                               const QuantizedTensor& input, const RnsSystem& sys,
                               const LayerOptions& options = {});

}  // namespace rnsw
