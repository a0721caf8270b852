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

#include "rnsw/layer.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "rnsw/error.hpp"
#include "rnsw/parallel.hpp"

namespace rnsw {

namespace {

constexpr std::int64_t kInt8Peak = 128;
constexpr std::size_t kMaxWinogradTile = 20;

std::size_t product(const Dims4& d) { return d[0] * d[1] * d[2] * d[3]; }

std::string dims_string(const Dims4& d) {
  std::ostringstream os;
  os << "(" << d[0] << "," << d[1] << "," << d[2] << "," << d[3] << ")";
  return os.str();
}

void check_operands(const LayerSpec& spec, const QuantizedTensor& weights,
                    const QuantizedTensor& input) {
  spec.validate();
  if (weights.dims() != spec.weight_dims())
    throw Error(ErrorCode::kShapeMismatch, "weights are " + dims_string(weights.dims()) +
                                               ", layer expects " + dims_string(spec.weight_dims()));
  if (input.dims() != spec.input_dims())
    throw Error(ErrorCode::kShapeMismatch, "input is " + dims_string(input.dims()) +
                                               ", layer expects " + dims_string(spec.input_dims()));
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

QuantizedTensor::QuantizedTensor(Dims4 dims) : dims_(dims), data_(product(dims), 0) {}

QuantizedTensor::QuantizedTensor(Dims4 dims, std::vector<std::int8_t> data)
    : dims_(dims), data_(std::move(data)) {
  if (data_.size() != product(dims_))
    throw Error(ErrorCode::kShapeMismatch, "tensor data does not match " + dims_string(dims_));
}

void LayerSpec::validate() const {
  if (batch == 0 || height == 0 || width == 0 || channels == 0 || filters == 0 || kernel == 0 ||
      stride == 0)
    throw Error(ErrorCode::kInvalidArgument, "layer dimensions must be positive");
  if (kernel > height + 2 * padding || kernel > width + 2 * padding)
    throw Error(ErrorCode::kInvalidArgument, "kernel larger than the padded input");
  if (kernel * kernel * channels > static_cast<std::size_t>(max_exact_depth(128, 128)))
    throw Error(ErrorCode::kOverflowRisk, "R*R*C too deep for exact int32 outputs");
}

ConvOutput direct_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                       const QuantizedTensor& input) {
  check_operands(spec, weights, input);
  const std::size_t r = spec.kernel, c = spec.channels, k = spec.filters;
  const std::size_t oh = spec.out_height(), ow = spec.out_width();
  const std::size_t depth = r * r * c;
  const std::size_t rows = oh * ow;

  // (R, R, C, K) flattened is already the depth x K weight matrix.
  Int8Matrix wmat(depth, k);
  std::copy(weights.data().begin(), weights.data().end(), wmat.data().begin());

  ConvOutput out{spec.output_dims(), std::vector<std::int32_t>(product(spec.output_dims()), 0)};
  Int8Matrix cols(rows, depth);
  for (std::size_t b = 0; b < spec.batch; ++b) {
    std::fill(cols.data().begin(), cols.data().end(), std::int8_t{0});
    for (std::size_t oy = 0; oy < oh; ++oy)
      for (std::size_t ox = 0; ox < ow; ++ox) {
        std::int8_t* dst = cols.row(oy * ow + ox).data();
        for (std::size_t ry = 0; ry < r; ++ry) {
          const auto iy = static_cast<std::ptrdiff_t>(oy * spec.stride + ry) -
                          static_cast<std::ptrdiff_t>(spec.padding);
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(spec.height)) continue;
          for (std::size_t rx = 0; rx < r; ++rx) {
            const auto ix = static_cast<std::ptrdiff_t>(ox * spec.stride + rx) -
                            static_cast<std::ptrdiff_t>(spec.padding);
            if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(spec.width)) continue;
            const std::int8_t* src = &input.data()[input.index(b, iy, ix, 0)];
            std::copy(src, src + c, dst + (ry * r + rx) * c);
          }
        }
      }
    AccMatrix acc(rows, k);
    gemm_acc(cols, wmat, acc);
    std::copy(acc.data().begin(), acc.data().end(), out.data.begin() + b * rows * k);
  }
  return out;
}

TileGrid make_tile_grid(std::size_t height, std::size_t width, std::size_t tile,
                        std::size_t kernel, std::size_t padding) {
  if (tile == 0 || kernel == 0) throw Error(ErrorCode::kInvalidArgument, "tile and kernel must be positive");
  if (kernel > height + 2 * padding || kernel > width + 2 * padding)
    throw Error(ErrorCode::kInvalidArgument, "kernel larger than the padded input");
  TileGrid grid;
  grid.tile = tile;
  grid.tile_size = tile + kernel - 1;
  grid.padding = padding;
  grid.out_height = height + 2 * padding - kernel + 1;
  grid.out_width = width + 2 * padding - kernel + 1;
  grid.tile_rows = (grid.out_height + tile - 1) / tile;
  grid.tile_cols = (grid.out_width + tile - 1) / tile;
  return grid;
}

void extract_patch(const QuantizedTensor& input, const TileGrid& grid, std::size_t b,
                   std::size_t ty, std::size_t tx, std::span<std::int8_t> out) {
  const auto& d = input.dims();
  const std::size_t n = grid.tile_size, c = d[3];
  assert(out.size() >= n * n * c);
  const auto y0 = static_cast<std::ptrdiff_t>(ty * grid.tile) - static_cast<std::ptrdiff_t>(grid.padding);
  const auto x0 = static_cast<std::ptrdiff_t>(tx * grid.tile) - static_cast<std::ptrdiff_t>(grid.padding);
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t iy = y0 + static_cast<std::ptrdiff_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      const std::ptrdiff_t ix = x0 + static_cast<std::ptrdiff_t>(j);
      std::int8_t* dst = out.data() + (i * n + j) * c;
      if (iy < 0 || ix < 0 || iy >= static_cast<std::ptrdiff_t>(d[1]) ||
          ix >= static_cast<std::ptrdiff_t>(d[2])) {
        std::fill(dst, dst + c, std::int8_t{0});
      } else {
        const std::int8_t* src = &input.data()[input.index(b, iy, ix, 0)];
        std::copy(src, src + c, dst);
      }
    }
  }
}

std::vector<Patch> tile_decompose(const QuantizedTensor& input, std::size_t tile,
                                  std::size_t kernel, std::size_t padding) {
  const auto& d = input.dims();
  const TileGrid grid = make_tile_grid(d[1], d[2], tile, kernel, padding);
  const std::size_t n = grid.tile_size;
  std::vector<Patch> patches;
  patches.reserve(d[0] * grid.tiles_per_image());
  for (std::size_t b = 0; b < d[0]; ++b)
    for (std::size_t ty = 0; ty < grid.tile_rows; ++ty)
      for (std::size_t tx = 0; tx < grid.tile_cols; ++tx) {
        Patch p;
        p.batch = b;
        p.tile_row = ty;
        p.tile_col = tx;
        p.out_row = ty * tile;
        p.out_col = tx * tile;
        p.out_rows = std::min(tile, grid.out_height - p.out_row);
        p.out_cols = std::min(tile, grid.out_width - p.out_col);
        p.data.resize(n * n * d[3]);
        extract_patch(input, grid, b, ty, tx, p.data);
        patches.push_back(std::move(p));
      }
  return patches;
}

namespace {

std::vector<TileKernel> make_kernels(const ExactTransformSet& exact, const RnsSystem& sys) {
  std::vector<TileKernel> kernels;
  kernels.reserve(sys.size());
  for (const Modulus m : sys.moduli()) kernels.emplace_back(reduce_transforms_mod(exact, m));
  return kernels;
}

}  // namespace

WinogradPlan::WinogradPlan(std::size_t tile, std::size_t kernel, RnsSystem system)
    : WinogradPlan(tile, kernel, std::move(system), default_points(tile + kernel - 1)) {}

WinogradPlan::WinogradPlan(std::size_t tile, std::size_t kernel, RnsSystem system,
                           const InterpolationPoints& points)
    : system_(std::move(system)),
      exact_(derive_transforms(tile, kernel, points)),
      kernels_(make_kernels(exact_, system_)) {
  if (!system_.fits_i64())
    throw Error(ErrorCode::kInvalidArgument, "RNS dynamic range must stay below 2^62");
}

FilterBank precompute_filter_transforms(const QuantizedTensor& weights, const WinogradPlan& plan) {
  const auto& d = weights.dims();
  const std::size_t r = plan.kernel(), n = plan.tile_size();
  if (d[0] != r || d[1] != r)
    throw Error(ErrorCode::kShapeMismatch, "weights are not R x R for this plan");
  const std::size_t c = d[2], k = d[3];

  FilterBank bank;
  bank.channels = c;
  bank.filters = k;
  bank.kernel = r;
  for (const TileKernel& kern : plan.kernels()) {
    const Modulus m = kern.modulus();
    ModulusFilters mf{m, {}, {}};
    if (m.is_8bit())
      mf.narrow.assign(n * n, Int8Matrix(c, k, m.half()));
    else
      mf.wide.assign(n * n, Int16Matrix(c, k, m.half()));

    // Transform a slice of channels at a time; all C*K filters of a slice
    // are lanes of one batched transform.
    constexpr std::size_t kSlice = 16;
    const std::size_t slices = (c + kSlice - 1) / kSlice;
    parallel_for(slices, [&](std::size_t begin, std::size_t end) {
      std::vector<std::int8_t> g;
      std::vector<std::int32_t> u, scratch;
      for (std::size_t s = begin; s < end; ++s) {
        const std::size_t c0 = s * kSlice, cs = std::min(kSlice, c - c0), lanes = cs * k;
        g.resize(r * r * lanes);
        u.resize(n * n * lanes);
        for (std::size_t rr = 0; rr < r * r; ++rr) {
          const std::int8_t* src = weights.data().data() + (rr * c + c0) * k;
          std::copy(src, src + lanes, g.data() + rr * lanes);
        }
        kern.filter_transform(g.data(), lanes, u.data(), scratch);
        for (std::size_t pos = 0; pos < n * n; ++pos) {
          const std::int32_t* src = u.data() + pos * lanes;
          if (m.is_8bit())
            std::copy(src, src + lanes, mf.narrow[pos].data().data() + c0 * k);
          else
            std::copy(src, src + lanes, mf.wide[pos].data().data() + c0 * k);
        }
      }
    });
    bank.per_modulus.push_back(std::move(mf));
  }
  return bank;
}

RangeCheck range_check(const LayerSpec& spec, const RnsSystem& sys,
                       std::optional<std::int64_t> declared_bound) {
  RangeCheck rc;
  rc.static_bound = BigInt(spec.kernel) * spec.kernel * spec.channels * kInt8Peak * kInt8Peak;
  rc.checked_bound = declared_bound ? BigInt(*declared_bound) : rc.static_bound;
  rc.fits = rc.checked_bound <= sys.signed_bound();
  return rc;
}

OperationCount count_operations(const LayerSpec& spec, std::size_t n_moduli, std::size_t tile) {
  if (tile == 0 || n_moduli == 0) throw Error(ErrorCode::kInvalidArgument, "tile and n must be positive");
  if (spec.stride != 1) throw Error(ErrorCode::kUnsupportedStride, "operation model covers stride 1");
  const TileGrid grid = make_tile_grid(spec.height, spec.width, tile, spec.kernel, spec.padding);
  const std::uint64_t n = grid.tile_size;
  OperationCount oc;
  oc.direct_mults = static_cast<std::uint64_t>(grid.out_height) * grid.out_width * spec.filters *
                    spec.channels * spec.kernel * spec.kernel * spec.batch;
  oc.winograd_mults = static_cast<std::uint64_t>(grid.tiles_per_image()) * spec.batch * n * n *
                      spec.channels * spec.filters * n_moduli;
  oc.reduction_ratio = static_cast<double>(oc.direct_mults) / static_cast<double>(oc.winograd_mults);
  return oc;
}

OperationCount count_operations(const LayerSpec& spec, const RnsSystem& sys, std::size_t tile) {
  return count_operations(spec, sys.size(), tile);
}

namespace {

template <typename T>
void run_modulus(const LayerSpec& spec, const QuantizedTensor& input, const TileGrid& grid,
                 const TileKernel& kern, const std::vector<IntMatrix<T>>& filters,
                 std::span<std::int16_t> residues, LayerProfile& profile) {
  const std::size_t n = grid.tile_size, m = grid.tile, c = spec.channels, k = spec.filters;
  const std::size_t positions = n * n;
  const std::size_t tiles = grid.tiles_per_image();
  const std::size_t patches = spec.batch * tiles;
  const Modulus mod = kern.modulus();
  const std::int32_t half = mod.half();
  Stopwatch watch;

  // Winograd-domain inputs, one patches x C matrix per position.
  std::vector<IntMatrix<T>> v(positions, IntMatrix<T>(patches, c, half));
  parallel_for(patches, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int8_t> patch(n * n * c);
    std::vector<std::int32_t> transformed(n * n * c), scratch;
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t b = p / tiles, t = p % tiles;
      extract_patch(input, grid, b, t / grid.tile_cols, t % grid.tile_cols, patch);
      kern.input_transform(patch.data(), c, transformed.data(), scratch);
      for (std::size_t pos = 0; pos < positions; ++pos) {
        const std::int32_t* src = transformed.data() + pos * c;
        std::copy(src, src + c, v[pos].row(p).data());
      }
    }
  });
  profile.input_transform += watch.lap();

  // Channel reduction: one GEMM per position, folded mod m between chunks.
  const std::size_t chunk = std::max<std::size_t>(1, max_exact_depth(half, half) - 1);
  std::vector<AccMatrix> acc(positions);
  parallel_for(positions, [&](std::size_t begin, std::size_t end) {
    for (std::size_t pos = begin; pos < end; ++pos) {
      acc[pos] = AccMatrix(patches, k);
      for (std::size_t c0 = 0; c0 < c; c0 += chunk) {
        gemm_acc_block(v[pos], filters[pos], acc[pos], 0, patches, c0, std::min(c, c0 + chunk));
        reduce_mod_inplace(acc[pos], mod);
      }
    }
  });
  v.clear();
  profile.gemm += watch.lap();

  const std::size_t oh = grid.out_height, ow = grid.out_width;
  parallel_for(patches, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> t(positions * k), y(m * m * k), scratch;
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t b = p / tiles, tile = p % tiles;
      const std::size_t oy = (tile / grid.tile_cols) * m, ox = (tile % grid.tile_cols) * m;
      const std::size_t rows = std::min(m, oh - oy), cols = std::min(m, ow - ox);
      for (std::size_t pos = 0; pos < positions; ++pos) {
        const auto src = acc[pos].row(p);
        std::copy(src.begin(), src.end(), t.data() + pos * k);
      }
      kern.backward_transform(t.data(), k, y.data(), scratch);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          const std::int32_t* src = y.data() + (i * m + j) * k;
          std::copy(src, src + k, residues.data() + ((b * oh + oy + i) * ow + ox + j) * k);
        }
    }
  });
  profile.backward_transform += watch.lap();
}

}  // namespace

ConvOutput winograd_layer_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                               const QuantizedTensor& input, const WinogradPlan& plan,
                               const FilterBank& filters, const LayerOptions& options) {
  check_operands(spec, weights, input);
  LayerProfile local;
  LayerProfile& profile = options.profile ? *options.profile : local;
  profile = LayerProfile{};
  Stopwatch total;

  if (spec.stride != 1) {
    if (!options.allow_fallback)
      throw Error(ErrorCode::kUnsupportedStride, "Winograd path requires stride 1");
    profile.fell_back = true;
    ConvOutput out = direct_conv(spec, weights, input);
    profile.total = total.lap();
    return out;
  }
  if (spec.kernel != plan.kernel() || (spec.tile != 0 && spec.tile != plan.tile()))
    throw Error(ErrorCode::kInvalidArgument, "layer tile/kernel do not match the plan");
  if (plan.tile_size() > kMaxWinogradTile)
    throw Error(ErrorCode::kInvalidArgument, "M + R - 1 must not exceed 20");
  if (filters.channels != spec.channels || filters.filters != spec.filters ||
      filters.kernel != spec.kernel || filters.per_modulus.size() != plan.kernels().size())
    throw Error(ErrorCode::kShapeMismatch, "filter bank does not match the layer");

  const RnsSystem& sys = plan.system();
  const RangeCheck rc = range_check(spec, sys, options.declared_bound);
  if (!rc.fits) {
    std::ostringstream os;
    os << "output bound " << rc.checked_bound << " exceeds the RNS signed bound "
       << sys.signed_bound();
    throw Error(ErrorCode::kDynamicRangeExceeded, os.str());
  }

  const TileGrid grid = make_tile_grid(spec.height, spec.width, plan.tile(), spec.kernel, spec.padding);
  const std::size_t elements = product(spec.output_dims());
  const std::size_t nm = sys.size();
  std::vector<std::vector<std::int16_t>> residues(nm, std::vector<std::int16_t>(elements));

  for (std::size_t i = 0; i < nm; ++i) {
    const TileKernel& kern = plan.kernels()[i];
    const ModulusFilters& mf = filters.per_modulus[i];
    if (!(mf.modulus == kern.modulus()))
      throw Error(ErrorCode::kSystemMismatch, "filter bank moduli differ from the plan");
    if (kern.modulus().is_8bit())
      run_modulus(spec, input, grid, kern, mf.narrow, residues[i], profile);
    else
      run_modulus(spec, input, grid, kern, mf.wide, residues[i], profile);
  }

  Stopwatch mrc;
  ConvOutput out{spec.output_dims(), std::vector<std::int32_t>(elements)};
  parallel_for(elements, [&](std::size_t begin, std::size_t end) {
    constexpr std::size_t kBlock = 4096;
    std::vector<std::int64_t> wide(kBlock);
    const std::int16_t* digits[RnsSystem::kMaxModuli];
    for (std::size_t e0 = begin; e0 < end; e0 += kBlock) {
      const std::size_t len = std::min(kBlock, end - e0);
      for (std::size_t i = 0; i < nm; ++i) digits[i] = residues[i].data() + e0;
      sys.reconstruct_many({digits, nm}, len, wide.data());
      // validate() caps R*R*C, so the exact outputs fit int32.
      for (std::size_t e = 0; e < len; ++e) out.data[e0 + e] = static_cast<std::int32_t>(wide[e]);
    }
  });
  profile.mrc = mrc.lap();
  profile.total = total.lap();
  return out;
}

ConvOutput winograd_layer_conv(const LayerSpec& spec, const QuantizedTensor& weights,
                               const QuantizedTensor& input, const RnsSystem& sys,
                               const LayerOptions& options) {
  if (spec.stride != 1) {
    check_operands(spec, weights, input);
    if (!options.allow_fallback)
      throw Error(ErrorCode::kUnsupportedStride, "Winograd path requires stride 1");
    if (options.profile) *options.profile = LayerProfile{.fell_back = true};
    return direct_conv(spec, weights, input);
  }
  if (spec.tile == 0) throw Error(ErrorCode::kInvalidArgument, "layer tile size not set");
  // Range first: an undersized RNS is reported as such even when its moduli
  // would also clash with the transform denominators.
  if (const RangeCheck rc = range_check(spec, sys, options.declared_bound); !rc.fits) {
    std::ostringstream os;
    os << "output bound " << rc.checked_bound << " exceeds the RNS signed bound "
       << sys.signed_bound();
    throw Error(ErrorCode::kDynamicRangeExceeded, os.str());
  }
  const WinogradPlan plan(spec.tile, spec.kernel, sys);
  const FilterBank bank = precompute_filter_transforms(weights, plan);
  return winograd_layer_conv(spec, weights, input, plan, bank, options);
}

}  // namespace rnsw
