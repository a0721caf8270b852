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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rnsw/cli/config.hpp"
#include "rnsw/transforms.hpp"

namespace rnsw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Transform dumps. Exact sets carry "modulus": null plus "alpha" and
/// "Gprime"; rational entries are strings "p/q", integers are numbers.
nlohmann::json to_json(const ExactTransformSet& ts);
nlohmann::json to_json(const ModularTransformSet& ts, const InterpolationPoints& points);

enum class OutputFormat { kText, kJson };

struct GenTransformsOptions {
  std::size_t m = 0;
  std::size_t r = 0;
  std::vector<std::string> points;  // empty: default points
  std::vector<std::int64_t> moduli;
  OutputFormat format = OutputFormat::kText;
};

int cmd_gen_transforms(const GenTransformsOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  BenchConfig config;
  /// All three set: check one convolution from files instead of the suite.
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> weights;
  std::optional<std::filesystem::path> output;
  std::optional<std::size_t> padding;  // file mode, default (R - 1) / 2
};

/// Random data per layer and trial is drawn from one Rng(config.seed), in
/// config order, weights before input. The report contains no timings.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string name;
  std::string shape;      // "HxWxC * RxRxK"
  std::string algorithm;  // "F(14x14,3x3)" or "direct"
  double direct_ms = 0;
  double winograd_ms = 0;
  double speedup = 0;
  double count_reduction = 0;
  double input_pct = 0;
  double gemm_pct = 0;
  double backward_pct = 0;
  double mrc_pct = 0;
  std::int64_t max_abs_output = 0;
  bool exact = false;
};

std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Fixed-width text and CSV renderings of the same cells.
std::string format_bench_text(const std::vector<BenchRow>& rows);
std::string format_bench_csv(const std::vector<BenchRow>& rows);

/// Exit 2 when any layer was not bit-exact.
int cmd_bench(const BenchConfig& cfg, const std::optional<std::filesystem::path>& csv,
              std::ostream& out, std::ostream& err);

struct ReductionRow {
  std::size_t m = 0;
  std::size_t r = 0;
  double two_moduli = 0;
  double three_moduli = 0;
};
/// The (M, R) rows of the standard complexity table, in display order.
std::vector<ReductionRow> reduction_table();

int cmd_analyze(std::ostream& out);

}  // namespace rnsw::cli
