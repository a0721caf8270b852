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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rnsw/error.hpp"
#include "rnsw/layer.hpp"
#include "rnsw/transforms.hpp"

namespace py = pybind11;

namespace {

using rnsw::BigInt;
using rnsw::Rational;

// Python ints carry arbitrary precision; decimal strings are the lossless bridge.
py::object to_py(const BigInt& v) {
  std::ostringstream os;
  os << v;
  return py::reinterpret_steal<py::object>(PyLong_FromString(os.str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& v) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(boost::multiprecision::numerator(v)), to_py(boost::multiprecision::denominator(v)));
}

BigInt from_py(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

template <typename T>
py::list matrix_list(const rnsw::Matrix<T>& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

py::array_t<std::int32_t> matrix_array(const rnsw::Matrix<std::int32_t>& m) {
  py::array_t<std::int32_t> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

rnsw::InterpolationPoints parse_points(std::size_t n, const std::optional<std::vector<std::string>>& points) {
  if (!points) return rnsw::default_points(n);
  std::vector<rnsw::InterpolationPoint> pts;
  for (const auto& p : *points) pts.push_back(rnsw::InterpolationPoint::parse(p));
  return rnsw::InterpolationPoints(std::move(pts));
}

using Int8Array = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

rnsw::QuantizedTensor tensor4(const Int8Array& a, const char* what) {
  if (a.ndim() != 4) throw rnsw::Error(rnsw::ErrorCode::kShapeMismatch, std::string(what) + " must be rank 4");
  const rnsw::Dims4 dims{static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)),
                         static_cast<std::size_t>(a.shape(2)), static_cast<std::size_t>(a.shape(3))};
  return rnsw::QuantizedTensor(dims, std::vector<std::int8_t>(a.data(), a.data() + a.size()));
}

// Input is (B, H, W, C) and weights (R, R, C, K), both channels-innermost.
rnsw::LayerSpec layer_spec(const rnsw::QuantizedTensor& x, const rnsw::QuantizedTensor& w, std::size_t padding,
                           std::size_t stride, std::size_t tile) {
  const auto& xd = x.dims();
  const auto& wd = w.dims();
  if (wd[0] != wd[1]) throw rnsw::Error(rnsw::ErrorCode::kShapeMismatch, "weights must be square R x R");
  rnsw::LayerSpec s;
  s.batch = xd[0];
  s.height = xd[1];
  s.width = xd[2];
  s.channels = xd[3];
  s.kernel = wd[0];
  s.filters = wd[3];
  s.padding = padding;
  s.stride = stride;
  s.tile = tile;
  s.validate();
  return s;
}

py::array_t<std::int32_t> output_array(const rnsw::ConvOutput& y) {
  py::array_t<std::int32_t> out({y.dims[0], y.dims[1], y.dims[2], y.dims[3]});
  std::copy(y.data.begin(), y.data.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_rnsw, m) {
  m.doc() = "Exact integer Winograd convolution over residue number systems";

  static py::exception<rnsw::Error> error(m, "RnswError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const rnsw::Error& e) {
      error(e.what());
    }
  });

  m.def(
      "derive_transforms",
      [](std::size_t tile, std::size_t kernel, std::optional<std::vector<std::string>> points) {
        const auto ts = rnsw::derive_transforms(tile, kernel, parse_points(tile + kernel - 1, points));
        py::list pts;
        for (const auto& p : ts.points) pts.append(p.to_string());
        py::dict d;
        d["points"] = pts;
        d["alpha"] = to_py(ts.alpha);
        d["AT"] = matrix_list(ts.at);
        d["G"] = matrix_list(ts.g);
        d["Gprime"] = matrix_list(ts.gprime);
        d["BT"] = matrix_list(ts.bt);
        return d;
      },
      py::arg("tile"), py::arg("kernel"), py::arg("points") = py::none(),
      "Exact transforms as Fractions; points are strings such as '1/2' or 'inf'.");

  m.def(
      "reduce_transforms",
      [](std::size_t tile, std::size_t kernel, std::int64_t modulus,
         std::optional<std::vector<std::string>> points) {
        const auto ts = rnsw::derive_transforms(tile, kernel, parse_points(tile + kernel - 1, points));
        const auto mt = rnsw::reduce_transforms_mod(ts, rnsw::Modulus(modulus));
        py::dict d;
        d["modulus"] = modulus;
        d["AT"] = matrix_array(mt.at);
        d["G"] = matrix_array(mt.g);
        d["BT"] = matrix_array(mt.bt);
        return d;
      },
      py::arg("tile"), py::arg("kernel"), py::arg("modulus"), py::arg("points") = py::none(),
      "Transforms reduced to balanced residues of one modulus.");

  m.def(
      "arithmetic_reduction",
      [](std::int64_t tile, std::int64_t kernel, std::int64_t n_moduli) {
        return to_py(rnsw::arithmetic_reduction(tile, kernel, n_moduli));
      },
      py::arg("tile"), py::arg("kernel"), py::arg("n_moduli"));

  m.def(
      "data_width",
      [](std::size_t tile, std::size_t kernel, int input_bits) {
        const auto r = rnsw::data_width_analysis(rnsw::derive_transforms(tile, kernel), input_bits);
        py::dict d;
        d["filter_magnification"] = r.filter_magnification;
        d["input_magnification"] = r.input_magnification;
        d["max_filter_row_l1"] = to_py(r.max_filter_row_l1);
        d["required_bits"] = r.required_bits;
        return d;
      },
      py::arg("tile"), py::arg("kernel"), py::arg("input_bits") = 8);

  py::class_<rnsw::RnsSystem>(m, "RnsSystem")
      .def(py::init([](const std::vector<std::int64_t>& moduli) { return rnsw::RnsSystem(std::span(moduli)); }),
           py::arg("moduli"))
      .def_property_readonly("moduli",
                             [](const rnsw::RnsSystem& s) {
                               std::vector<std::int64_t> out;
                               for (const auto& m : s.moduli()) out.push_back(m.value());
                               return out;
                             })
      .def_property_readonly("dynamic_range", [](const rnsw::RnsSystem& s) { return to_py(s.dynamic_range()); })
      .def_property_readonly("signed_bound", [](const rnsw::RnsSystem& s) { return to_py(s.signed_bound()); })
      .def(
          "to_rns",
          [](const rnsw::RnsSystem& s, const py::int_& x) {
            const auto v = s.to_rns(from_py(x));
            return std::vector<std::int32_t>(v.digits().begin(), v.digits().end());
          },
          py::arg("x"), "Balanced digits, one per modulus.")
      .def(
          "reconstruct",
          [](const rnsw::RnsSystem& s, const std::vector<std::int32_t>& digits) {
            return to_py(s.mrc_reconstruct(rnsw::RnsVector({s.moduli().begin(), s.moduli().end()}, digits)));
          },
          py::arg("digits"), "Mixed-radix reconstruction into [-signed_bound, signed_bound].")
      .def("__repr__", [](const rnsw::RnsSystem& s) {
        std::ostringstream os;
        os << "RnsSystem(";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s.moduli()[i].value();
        os << ")";
        return os.str();
      });

  m.def(
      "direct_conv",
      [](const Int8Array& input, const Int8Array& weights, std::size_t padding, std::size_t stride) {
        const auto x = tensor4(input, "input");
        const auto w = tensor4(weights, "weights");
        const auto spec = layer_spec(x, w, padding, stride, 1);
        rnsw::ConvOutput y;
        {
          py::gil_scoped_release release;
          y = rnsw::direct_conv(spec, w, x);
        }
        return output_array(y);
      },
      py::arg("input"), py::arg("weights"), py::arg("padding") = 0, py::arg("stride") = 1,
      "Exact int32 correlation of int8 (B,H,W,C) input with (R,R,C,K) weights.");

  m.def(
      "winograd_conv",
      [](const Int8Array& input, const Int8Array& weights, const std::vector<std::int64_t>& moduli,
         std::size_t tile, std::size_t padding, std::optional<std::int64_t> declared_bound) {
        const auto x = tensor4(input, "input");
        const auto w = tensor4(weights, "weights");
        const auto spec = layer_spec(x, w, padding, 1, tile);
        const rnsw::RnsSystem sys{std::span(moduli)};
        rnsw::LayerOptions opts;
        opts.declared_bound = declared_bound;
        rnsw::ConvOutput y;
        {
          py::gil_scoped_release release;
          y = rnsw::winograd_layer_conv(spec, w, x, sys, opts);
        }
        return output_array(y);
      },
      py::arg("input"), py::arg("weights"), py::arg("moduli") = std::vector<std::int64_t>{253, 251, 247},
      py::arg("tile") = 10, py::arg("padding") = 0, py::arg("declared_bound") = py::none(),
      "Winograd convolution over the given RNS; bit-exact with direct_conv.");
}
