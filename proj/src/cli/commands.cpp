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

#include "rnsw/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rnsw/error.hpp"
#include "rnsw/random.hpp"
#include "rnsw/tensor_io.hpp"

namespace rnsw::cli {

namespace {

using nlohmann::json;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

json rational_json(const Rational& v) {
  if (denominator(v) == 1 && numerator(v) >= INT64_MIN && numerator(v) <= INT64_MAX)
    return static_cast<std::int64_t>(numerator(v));
  return to_string(v);
}

template <typename T, typename F>
json matrix_json(const Matrix<T>& mat, F&& cell) {
  json rows = json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (const auto& e : mat.row(i)) row.push_back(cell(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

json points_json(const InterpolationPoints& pts) {
  json out = json::array();
  for (const auto& p : pts) {
    if (p.is_infinite())
      out.push_back("inf");
    else
      out.push_back(rational_json(p.value()));
  }
  return out;
}

std::string join_points(const InterpolationPoints& pts) {
  std::string s;
  for (const auto& p : pts) s += (s.empty() ? "" : " ") + p.to_string();
  return s;
}

template <typename T, typename F>
void print_matrix(std::ostream& out, const std::string& title, const Matrix<T>& mat, F&& cell) {
  std::vector<std::string> cells;
  std::vector<std::size_t> width(mat.cols(), 0);
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      cells.push_back(cell(mat(i, j)));
      width[j] = std::max(width[j], cells.back().size());
    }
  out << title << " (" << mat.rows() << "x" << mat.cols() << ")\n";
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      const auto& c = cells[i * mat.cols() + j];
      out << std::string(width[j] + 2 - c.size(), ' ') << c;
    }
    out << '\n';
  }
  out << '\n';
}

std::string rns_name(const std::vector<std::int64_t>& moduli) {
  std::string s = "RNS(";
  for (std::size_t i = 0; i < moduli.size(); ++i) s += (i ? "," : "") + std::to_string(moduli[i]);
  return s + ")";
}

std::string algo_name(std::size_t m, std::size_t r) {
  std::ostringstream os;
  os << "F(" << m << "x" << m << "," << r << "x" << r << ")";
  return os.str();
}

std::string dims_name(const Dims4& d) {
  std::ostringstream os;
  os << d[0] << "x" << d[1] << "x" << d[2] << "x" << d[3];
  return os.str();
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::int64_t max_abs(const ConvOutput& y) {
  std::int64_t m = 0;
  for (const auto v : y.data) m = std::max(m, std::abs(static_cast<std::int64_t>(v)));
  return m;
}

std::optional<std::int64_t> declared_bound(const OutputBound& b, const ConvOutput& direct) {
  switch (b.mode) {
    case BoundMode::kStatic: return std::nullopt;
    case BoundMode::kMeasured: return max_abs(direct);
    case BoundMode::kFixed: return b.value;
  }
  return std::nullopt;
}

struct Comparison {
  std::size_t mismatches = 0;
  std::vector<std::string> first;  // up to 4 "(b,y,x,k) expected=.. got=.."
};

Comparison compare(const ConvOutput& expected, const ConvOutput& got) {
  Comparison c;
  if (expected.dims != got.dims) {
    c.mismatches = std::max(expected.data.size(), got.data.size());
    c.first.push_back("shape " + dims_name(expected.dims) + " vs " + dims_name(got.dims));
    return c;
  }
  const auto& d = expected.dims;
  for (std::size_t b = 0; b < d[0]; ++b)
    for (std::size_t y = 0; y < d[1]; ++y)
      for (std::size_t x = 0; x < d[2]; ++x)
        for (std::size_t k = 0; k < d[3]; ++k) {
          const auto e = expected.at(b, y, x, k);
          const auto g = got.at(b, y, x, k);
          if (e == g) continue;
          if (c.first.size() < 4) {
            std::ostringstream os;
            os << "(" << b << "," << y << "," << x << "," << k << ") expected=" << e << " got=" << g;
            c.first.push_back(os.str());
          }
          ++c.mismatches;
        }
  return c;
}

void print_comparison(std::ostream& out, const Comparison& c) {
  out << " mismatches=" << c.mismatches;
  for (const auto& s : c.first) out << " at " << s;
}

int error_exit(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIo: return kExitUsage;
    default: return kExitFailure;
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json to_json(const ExactTransformSet& ts) {
  json j;
  j["M"] = ts.output_size;
  j["R"] = ts.filter_size;
  j["points"] = points_json(ts.points);
  j["modulus"] = nullptr;
  j["alpha"] = to_string(ts.alpha);
  j["AT"] = matrix_json(ts.at, rational_json);
  j["G"] = matrix_json(ts.g, rational_json);
  j["Gprime"] = matrix_json(ts.gprime, [](const BigInt& v) { return rational_json(Rational(v)); });
  j["BT"] = matrix_json(ts.bt, rational_json);
  return j;
}

json to_json(const ModularTransformSet& ts, const InterpolationPoints& points) {
  auto cell = [](std::int32_t v) { return json(v); };
  json j;
  j["M"] = ts.output_size;
  j["R"] = ts.filter_size;
  j["points"] = points_json(points);
  j["modulus"] = ts.modulus.value();
  j["AT"] = matrix_json(ts.at, cell);
  j["G"] = matrix_json(ts.g, cell);
  j["BT"] = matrix_json(ts.bt, cell);
  return j;
}

int cmd_gen_transforms(const GenTransformsOptions& opts, std::ostream& out, std::ostream& err) {
  ExactTransformSet ts;
  std::vector<ModularTransformSet> reduced;
  try {
    if (opts.m == 0 || opts.r == 0) throw Error(ErrorCode::kInvalidArgument, "--m and --r must be positive");
    if (opts.points.empty()) {
      ts = derive_transforms(opts.m, opts.r);
    } else {
      std::vector<InterpolationPoint> pts;
      for (const auto& p : opts.points) pts.push_back(InterpolationPoint::parse(p));
      ts = derive_transforms(opts.m, opts.r, InterpolationPoints(std::move(pts)));
    }
    for (const auto m : opts.moduli) {
      if (const auto conflict = find_modulus_conflict(ts, m)) {
        err << "error: NotCoprime: modulus " << m << " shares factor " << conflict->prime_factor
            << " with " << conflict->denominator << "\n";
        return kExitFailure;
      }
      reduced.push_back(reduce_transforms_mod(ts, Modulus(m)));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return error_exit(e);
  }

  if (opts.format == OutputFormat::kJson) {
    json doc = json::array();
    doc.push_back(to_json(ts));
    for (const auto& r : reduced) doc.push_back(to_json(r, ts.points));
    out << doc.dump(1) << "\n";
    return kExitOk;
  }

  const auto rat = [](const Rational& v) { return to_string(v); };
  const auto big = [](const BigInt& v) { return v.str(); };
  const auto i32 = [](std::int32_t v) { return std::to_string(v); };
  out << algo_name(ts.output_size, ts.filter_size) << " points: " << join_points(ts.points) << "\n";
  out << "alpha = " << to_string(ts.alpha) << "\n\n";
  print_matrix(out, "AT", ts.at, rat);
  print_matrix(out, "G", ts.g, rat);
  print_matrix(out, "Gprime", ts.gprime, big);
  print_matrix(out, "BT", ts.bt, rat);
  for (const auto& r : reduced) {
    const std::string suffix = " mod " + std::to_string(r.modulus.value());
    print_matrix(out, "AT" + suffix, r.at, i32);
    print_matrix(out, "G" + suffix, r.g, i32);
    print_matrix(out, "BT" + suffix, r.bt, i32);
  }
  return kExitOk;
}

namespace {

int verify_files(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (!opts.input || !opts.weights)
      throw Error(ErrorCode::kInvalidArgument, "--input and --weights must be given together");
    const auto x = read_quantized(*opts.input);
    const auto w = read_quantized(*opts.weights);
    const auto& wd = w.dims();
    const auto& xd = x.dims();
    if (wd[0] != wd[1] || wd[2] != xd[3])
      throw Error(ErrorCode::kInvalidArgument,
                  "weights " + dims_name(wd) + " do not fit input " + dims_name(xd));
    LayerSpec spec;
    spec.batch = xd[0];
    spec.height = xd[1];
    spec.width = xd[2];
    spec.channels = xd[3];
    spec.filters = wd[3];
    spec.kernel = wd[0];
    spec.padding = opts.padding.value_or((wd[0] - 1) / 2);
    spec.tile = opts.config.tile;
    spec.validate();

    const RnsSystem sys(std::span<const std::int64_t>(opts.config.rns));
    const auto direct = direct_conv(spec, w, x);
    LayerOptions lo;
    lo.declared_bound = declared_bound(opts.config.output_bound, direct);
    const auto got = winograd_layer_conv(spec, w, x, sys, lo);
    if (opts.output) write_tensor(*opts.output, got);
    const auto cmp = compare(direct, got);
    out << (cmp.mismatches ? "FAIL" : "PASS") << " file " << algo_name(spec.tile, spec.kernel) << " "
        << rns_name(opts.config.rns) << " in=" << dims_name(xd) << " w=" << dims_name(wd)
        << " pad=" << spec.padding;
    if (cmp.mismatches) print_comparison(out, cmp);
    out << "\n";
    return cmp.mismatches ? kExitFailure : kExitOk;
  } catch (const Error& e) {
    out << "FAIL file error=" << to_string(e.code()) << "\n";
    err << "error: " << e.what() << "\n";
    return error_exit(e);
  }
}

}  // namespace

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.input || opts.weights || opts.output) return verify_files(opts, out, err);

  const BenchConfig& cfg = opts.config;
  Rng rng(cfg.seed);
  std::size_t total = 0;
  std::size_t passed = 0;
  for (const auto& layer : cfg.layers) {
    const auto& spec = layer.spec;
    for (std::size_t trial = 0; trial < cfg.iterations; ++trial) {
      ++total;
      QuantizedTensor w(spec.weight_dims());
      QuantizedTensor x(spec.input_dims());
      fill_random(w, rng);
      fill_random(x, rng);
      out << layer.name << " trial=" << trial << " " << algo_name(spec.tile, spec.kernel) << " "
          << rns_name(layer.rns) << " in=" << dims_name(spec.input_dims()) << " K=" << spec.filters
          << " pad=" << spec.padding << " stride=" << spec.stride << ": ";
      try {
        const RnsSystem sys(std::span<const std::int64_t>(layer.rns));
        const auto direct = direct_conv(spec, w, x);
        LayerOptions lo;
        lo.declared_bound = declared_bound(cfg.output_bound, direct);
        LayerProfile profile;
        lo.profile = &profile;
        const auto got = winograd_layer_conv(spec, w, x, sys, lo);
        const auto cmp = compare(direct, got);
        if (cmp.mismatches) {
          out << "FAIL";
          print_comparison(out, cmp);
        } else {
          out << "PASS" << (profile.fell_back ? " (direct fallback)" : "");
          ++passed;
        }
        out << "\n";
      } catch (const Error& e) {
        out << "FAIL error=" << to_string(e.code()) << "\n";
        err << layer.name << ": " << e.what() << "\n";
      }
    }
  }
  out << "verify: " << passed << "/" << total << " bit-exact (seed " << opts.config.seed << ")\n";
  return passed == total ? kExitOk : kExitFailure;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  Rng rng(cfg.seed);
  for (const auto& layer : cfg.layers) {
    const auto& spec = layer.spec;
    BenchRow row;
    row.name = layer.name;
    {
      std::ostringstream os;
      os << spec.height << "x" << spec.width << "x" << spec.channels << "*" << spec.kernel << "x"
         << spec.kernel << "x" << spec.filters;
      if (spec.batch != 1) os << "@b" << spec.batch;
      row.shape = os.str();
    }
    QuantizedTensor w(spec.weight_dims());
    QuantizedTensor x(spec.input_dims());
    fill_random(w, rng);
    fill_random(x, rng);

    ConvOutput direct;
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < cfg.iterations; ++i) direct = direct_conv(spec, w, x);
    row.direct_ms = ms_since(t0) / static_cast<double>(cfg.iterations);
    row.max_abs_output = max_abs(direct);

    if (layer.fallback || spec.stride != 1) {
      row.algorithm = "direct";
      row.winograd_ms = row.direct_ms;
      row.speedup = 1;
      row.count_reduction = 1;
      row.exact = true;
      rows.push_back(std::move(row));
      continue;
    }

    row.algorithm = algo_name(spec.tile, spec.kernel);
    const RnsSystem sys(std::span<const std::int64_t>(layer.rns));
    row.count_reduction = count_operations(spec, sys, spec.tile).reduction_ratio;
    const WinogradPlan plan(spec.tile, spec.kernel, sys);
    // Filters are transformed once per model, outside the timed region.
    const FilterBank bank = precompute_filter_transforms(w, plan);
    LayerOptions lo;
    lo.declared_bound = declared_bound(cfg.output_bound, direct);
    lo.allow_fallback = false;
    LayerProfile sum;
    ConvOutput got;
    t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < cfg.iterations; ++i) {
      LayerProfile p;
      lo.profile = &p;
      got = winograd_layer_conv(spec, w, x, plan, bank, lo);
      sum.input_transform += p.input_transform;
      sum.gemm += p.gemm;
      sum.backward_transform += p.backward_transform;
      sum.mrc += p.mrc;
      sum.total += p.total;
    }
    row.winograd_ms = ms_since(t0) / static_cast<double>(cfg.iterations);
    row.speedup = row.winograd_ms > 0 ? row.direct_ms / row.winograd_ms : 0;
    if (sum.total > 0) {
      row.input_pct = 100 * sum.input_transform / sum.total;
      row.gemm_pct = 100 * sum.gemm / sum.total;
      row.backward_pct = 100 * sum.backward_transform / sum.total;
      row.mrc_pct = 100 * sum.mrc / sum.total;
    }
    row.exact = got == direct;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

const std::vector<std::string> kBenchHeader = {
    "layer",   "shape",      "algorithm", "direct_ms", "winograd_ms", "speedup", "count_reduction",
    "input_tf_pct", "gemm_pct", "backward_tf_pct", "mrc_pct", "max_abs_output", "exact"};

// Quoted per RFC 4180 when the cell holds a comma or quote, as in "F(2x2,3x3)".
std::string csv_field(const std::string& cell) {
  if (cell.find_first_of(",\"") == std::string::npos) return cell;
  std::string q = "\"";
  for (const char ch : cell) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::vector<std::vector<std::string>> bench_cells(const std::vector<BenchRow>& rows) {
  std::vector<std::vector<std::string>> cells{kBenchHeader};
  for (const auto& r : rows)
    cells.push_back({r.name, r.shape, r.algorithm, fixed(r.direct_ms), fixed(r.winograd_ms),
                     fixed(r.speedup), fixed(r.count_reduction), fixed(r.input_pct, 1),
                     fixed(r.gemm_pct, 1), fixed(r.backward_pct, 1), fixed(r.mrc_pct, 1),
                     std::to_string(r.max_abs_output), r.exact ? "yes" : "NO"});
  return cells;
}

}  // namespace

std::string format_bench_text(const std::vector<BenchRow>& rows) {
  const auto cells = bench_cells(rows);
  std::vector<std::size_t> width(kBenchHeader.size(), 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << "  ";
      // Text columns left-aligned, numeric ones right-aligned.
      if (j < 3)
        os << row[j] << std::string(j + 1 < row.size() ? width[j] - row[j].size() : 0, ' ');
      else
        os << std::string(width[j] - row[j].size(), ' ') << row[j];
    }
    os << '\n';
  }
  return os.str();
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  for (const auto& row : bench_cells(rows)) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_field(row[j]);
    os << '\n';
  }
  return os.str();
}

int cmd_bench(const BenchConfig& cfg, const std::optional<std::filesystem::path>& csv,
              std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  try {
    rows = run_bench(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return error_exit(e);
  }
  out << format_bench_text(rows);
  if (csv) {
    std::ofstream f(*csv);
    if (!f) {
      err << "error: cannot write " << csv->string() << "\n";
      return kExitUsage;
    }
    f << format_bench_csv(rows);
  }

  bool all_exact = true;
  double speedup_sum = 0;
  std::size_t winograd_layers = 0;
  for (const auto& r : rows) {
    all_exact = all_exact && r.exact;
    if (r.algorithm != "direct") {
      speedup_sum += r.speedup;
      ++winograd_layers;
    }
  }
  if (winograd_layers)
    out << "mean speedup over " << winograd_layers
        << " Winograd layers: " << fixed(speedup_sum / static_cast<double>(winograd_layers)) << "\n";
  if (!all_exact) {
    err << "error: Winograd output differs from the direct convolution\n";
    return kExitFailure;
  }
  return kExitOk;
}

std::vector<ReductionRow> reduction_table() {
  static const std::pair<std::size_t, std::size_t> kRows[] = {
      {2, 3}, {4, 3}, {6, 3}, {8, 3}, {8, 5}, {9, 3}, {9, 5},
      {10, 3}, {10, 5}, {11, 3}, {11, 5}, {12, 3}, {12, 5}, {14, 3}};
  std::vector<ReductionRow> out;
  for (const auto& [m, r] : kRows) {
    const auto mm = static_cast<std::int64_t>(m);
    const auto rr = static_cast<std::int64_t>(r);
    out.push_back({m, r, static_cast<double>(arithmetic_reduction(mm, rr, 2)),
                   static_cast<double>(arithmetic_reduction(mm, rr, 3))});
  }
  return out;
}

int cmd_analyze(std::ostream& out) {
  out << "Arithmetic reduction M^2 R^2 / (N^2 n)\n";
  out << "algorithm        n=2 (16-bit)  n=3 (8-bit)\n";
  for (const auto& row : reduction_table()) {
    char line[96];
    std::snprintf(line, sizeof line, "%-15s  %12.3f  %11.3f%s\n", algo_name(row.m, row.r).c_str(),
                  row.two_moduli, row.three_moduli, row.three_moduli < 1 ? "  (slowdown)" : "");
    out << line;
  }

  out << "\nScaled-integer data width at 8-bit inputs\n";
  out << "algorithm        filter_mag   input_mag         Lmax  DW_bits  reduction\n";
  static const std::pair<std::size_t, std::size_t> kWidthRows[] = {
      {2, 3}, {4, 3}, {6, 3}, {8, 3}, {8, 5}, {10, 3}, {10, 5}};
  for (const auto& [m, r] : kWidthRows) {
    const auto ts = derive_transforms(m, r);
    const auto rep = data_width_analysis(ts, 8);
    const double single = static_cast<double>(
        arithmetic_reduction(static_cast<std::int64_t>(m), static_cast<std::int64_t>(r), 1));
    char line[160];
    std::snprintf(line, sizeof line, "%-15s  %10.4g  %10.4g  %11s  %7d  %9.2f\n",
                  algo_name(m, r).c_str(), rep.filter_magnification, rep.input_magnification,
                  rep.max_filter_row_l1.str().c_str(), rep.required_bits, single);
    out << line;
  }
  return kExitOk;
}

}  // namespace rnsw::cli
