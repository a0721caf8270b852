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

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rnsw/cli/commands.hpp"
#include "rnsw/error.hpp"

namespace {

using namespace rnsw::cli;

std::vector<std::int64_t> parse_moduli(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const auto v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(text);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Command-line flags override the config file.
struct SuiteFlags {
  std::string config;
  std::string moduli;
  std::optional<std::size_t> tile;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file");
    cmd->add_option("--moduli", moduli, "comma-separated moduli, overrides every layer");
    cmd->add_option("--tile", tile, "output tile edge M, overrides every layer")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "PRNG seed");
    cmd->add_option("--iterations", iterations, "trials per layer")->check(CLI::PositiveNumber);
  }

  BenchConfig resolve(BenchConfig cfg) const {
    if (!config.empty()) cfg = load_config(config);
    if (!moduli.empty()) {
      cfg.rns = parse_moduli(moduli);
      for (auto& l : cfg.layers) l.rns = cfg.rns;
    }
    if (tile) {
      cfg.tile = *tile;
      for (auto& l : cfg.layers) l.spec.tile = *tile;
    }
    if (seed) cfg.seed = *seed;
    if (iterations) cfg.iterations = *iterations;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact integer Winograd convolution over residue number systems"};
  app.require_subcommand(1);

  GenTransformsOptions gen;
  std::string gen_moduli;
  std::string gen_points;
  std::string gen_format = "text";
  auto* gen_cmd = app.add_subcommand("gen-transforms", "print exact and per-modulus transform matrices");
  gen_cmd->add_option("--m", gen.m, "output tile edge M")->required();
  gen_cmd->add_option("--r", gen.r, "filter edge R")->required();
  gen_cmd->add_option("--points", gen_points, "comma-separated points, e.g. 0,1,-1,1/2,inf");
  gen_cmd->add_option("--moduli", gen_moduli, "comma-separated moduli");
  gen_cmd->add_option("--format", gen_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  SuiteFlags verify_flags;
  VerifyOptions verify;
  std::string in_path, w_path, out_path;
  std::optional<std::size_t> padding;
  auto* verify_cmd = app.add_subcommand("verify", "check Winograd against direct convolution");
  verify_flags.add_to(verify_cmd);
  verify_cmd->add_option("--input", in_path, "QTNS int8 input (B,H,W,C)");
  verify_cmd->add_option("--weights", w_path, "QTNS int8 weights (R,R,C,K)");
  verify_cmd->add_option("--output", out_path, "write the Winograd result as QTNS int32");
  verify_cmd->add_option("--padding", padding, "zero padding in file mode, default (R-1)/2");

  SuiteFlags bench_flags;
  std::string csv_path;
  auto* bench_cmd = app.add_subcommand("bench", "time direct and Winograd paths per layer");
  bench_flags.add_to(bench_cmd);
  bench_cmd->add_option("--csv", csv_path, "also write the table as CSV");

  auto* analyze_cmd = app.add_subcommand("analyze", "print complexity and data-width tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      if (!gen_moduli.empty()) gen.moduli = parse_moduli(gen_moduli);
      if (!gen_points.empty()) gen.points = split(gen_points);
      gen.format = gen_format == "json" ? OutputFormat::kJson : OutputFormat::kText;
      return cmd_gen_transforms(gen, std::cout, std::cerr);
    }
    if (*verify_cmd) {
      verify.config = verify_flags.resolve(default_verify_config());
      if (!in_path.empty()) verify.input = in_path;
      if (!w_path.empty()) verify.weights = w_path;
      if (!out_path.empty()) verify.output = out_path;
      verify.padding = padding;
      return cmd_verify(verify, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      std::optional<std::filesystem::path> csv;
      if (!csv_path.empty()) csv = csv_path;
      return cmd_bench(bench_flags.resolve(BenchConfig{}), csv, std::cout, std::cerr);
    }
    if (*analyze_cmd) return cmd_analyze(std::cout);
  } catch (const rnsw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == rnsw::ErrorCode::kInvalidArgument || e.code() == rnsw::ErrorCode::kIo
               ? kExitUsage
               : kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: cannot parse number list '" << e.what() << "'\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range\n";
    return kExitUsage;
  }
  return kExitUsage;
}
