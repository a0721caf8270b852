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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rnsw/layer.hpp"

namespace rnsw::cli {

/// How a layer's output magnitude is bounded before the RNS range check.
enum class BoundMode {
  kStatic,    // R^2 * C * 128^2
  kMeasured,  // max |direct_conv output| of the actual data
  kFixed,     // a caller-supplied integer
};

struct OutputBound {
  BoundMode mode = BoundMode::kStatic;
  std::int64_t value = 0;  // kFixed only
};

struct LayerEntry {
  std::string name;
  LayerSpec spec;  // spec.tile is the effective tile after defaults
  std::vector<std::int64_t> rns;  // effective moduli after defaults
  /// Run the direct path for this layer (as Table-4-style baselines do for
  /// the 3-channel first layer) instead of Winograd.
  bool fallback = false;
};

/// Config file, a JSON object:
///
///   {
///     "rns": [253, 251, 247],      moduli, default for every layer
///     "tile": 10,                   output tile edge M, default for every layer
///     "seed": 1,                    64-bit PRNG seed
///     "iterations": 1,              random trials (verify) or timed runs (bench)
///     "output_bound": "static",     "static" | "measured" | integer
///     "layers": [
///       {"name": "a", "H": 16, "W": 16, "C": 8, "K": 4, "R": 3,
///        "batch": 1, "padding": 1, "stride": 1,
///        "tile": 4, "rns": [4001, 4331], "fallback": false}
///     ]
///   }
///
/// Per-layer "tile" and "rns" override the top-level defaults. "batch",
/// "padding", "stride", "fallback" are optional (1, 0, 1, false).
struct BenchConfig {
  std::vector<std::int64_t> rns{253, 251, 247};
  std::size_t tile = 10;
  std::uint64_t seed = 1;
  std::size_t iterations = 1;
  OutputBound output_bound;
  std::vector<LayerEntry> layers;
};

/// Throws Error(kInvalidArgument) on malformed JSON, unknown keys or a layer
/// that fails LayerSpec::validate().
BenchConfig parse_config(std::string_view text);
BenchConfig load_config(const std::filesystem::path& path);

/// Small mixed suite used by `verify` without --config.
BenchConfig default_verify_config();

}  // namespace rnsw::cli
