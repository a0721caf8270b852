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

#include "rnsw/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rnsw/error.hpp"

namespace rnsw::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "config: " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

std::size_t get_size(const json& obj, const char* key, std::size_t fallback, bool required,
                     const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) fail(where + " is missing '" + key + "'");
    return fallback;
  }
  if (!it->is_number_unsigned()) fail(where + "." + key + " must be a non-negative integer");
  return it->get<std::size_t>();
}

std::vector<std::int64_t> get_moduli(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) fail(where + " must be a non-empty array of moduli");
  std::vector<std::int64_t> out;
  for (const auto& m : value) {
    if (!m.is_number_integer()) fail(where + " entries must be integers");
    out.push_back(m.get<std::int64_t>());
  }
  return out;
}

}  // namespace

BenchConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  reject_unknown(root, {"rns", "tile", "seed", "iterations", "output_bound", "layers"}, "config");

  BenchConfig cfg;
  if (root.contains("rns")) cfg.rns = get_moduli(root["rns"], "rns");
  cfg.tile = get_size(root, "tile", cfg.tile, false, "config");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("seed must be a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  cfg.iterations = get_size(root, "iterations", cfg.iterations, false, "config");
  if (cfg.iterations == 0) fail("iterations must be positive");

  if (root.contains("output_bound")) {
    const auto& b = root["output_bound"];
    if (b == "static") {
      cfg.output_bound = {BoundMode::kStatic, 0};
    } else if (b == "measured") {
      cfg.output_bound = {BoundMode::kMeasured, 0};
    } else if (b.is_number_unsigned()) {
      cfg.output_bound = {BoundMode::kFixed, b.get<std::int64_t>()};
    } else {
      fail("output_bound must be \"static\", \"measured\" or a non-negative integer");
    }
  }

  if (root.contains("layers")) {
    if (!root["layers"].is_array()) fail("layers must be an array");
    std::size_t index = 0;
    for (const auto& l : root["layers"]) {
      const std::string where = "layers[" + std::to_string(index++) + "]";
      if (!l.is_object()) fail(where + " must be an object");
      reject_unknown(l, {"name", "H", "W", "C", "K", "R", "batch", "padding", "stride", "tile", "rns",
                         "fallback"},
                     where);
      LayerEntry e;
      e.name = l.value("name", where);
      e.spec.height = get_size(l, "H", 0, true, where);
      e.spec.width = get_size(l, "W", 0, true, where);
      e.spec.channels = get_size(l, "C", 0, true, where);
      e.spec.filters = get_size(l, "K", 0, true, where);
      e.spec.kernel = get_size(l, "R", 0, true, where);
      e.spec.batch = get_size(l, "batch", 1, false, where);
      e.spec.padding = get_size(l, "padding", 0, false, where);
      e.spec.stride = get_size(l, "stride", 1, false, where);
      e.spec.tile = get_size(l, "tile", cfg.tile, false, where);
      e.rns = l.contains("rns") ? get_moduli(l["rns"], where + ".rns") : cfg.rns;
      if (l.contains("fallback")) {
        if (!l["fallback"].is_boolean()) fail(where + ".fallback must be a boolean");
        e.fallback = l["fallback"].get<bool>();
      }
      try {
        e.spec.validate();
      } catch (const Error& err) {
        fail(where + " (" + e.name + "): " + err.what());
      }
      if (e.spec.tile == 0) fail(where + " tile must be positive");
      cfg.layers.push_back(std::move(e));
    }
  }
  return cfg;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

BenchConfig default_verify_config() {
  BenchConfig cfg;
  cfg.rns = {253, 251, 247};
  cfg.tile = 10;
  cfg.seed = 1;
  cfg.iterations = 2;
  auto add = [&](std::string name, std::size_t hw, std::size_t c, std::size_t k, std::size_t r,
                 std::size_t pad, std::size_t tile, std::vector<std::int64_t> rns) {
    LayerEntry e;
    e.name = std::move(name);
    e.spec.height = hw;
    e.spec.width = hw + 3;
    e.spec.channels = c;
    e.spec.filters = k;
    e.spec.kernel = r;
    e.spec.padding = pad;
    e.spec.tile = tile;
    e.rns = std::move(rns);
    cfg.layers.push_back(std::move(e));
  };
  const std::vector<std::int64_t> rns8a{253, 251, 247};
  const std::vector<std::int64_t> rns8b{251, 241, 239};
  const std::vector<std::int64_t> rns16{4001, 4331};
  add("f2x3_small", 9, 3, 4, 3, 1, 2, rns8a);
  add("f4x3", 16, 8, 4, 3, 1, 4, rns8a);
  add("f10x3", 24, 16, 8, 3, 1, 10, rns8a);
  add("f8x5", 21, 8, 4, 5, 2, 8, rns8a);
  add("f12x3_rns8b", 27, 16, 4, 3, 1, 12, rns8b);
  add("f14x3_rns8b", 30, 16, 8, 3, 1, 14, rns8b);
  add("f12x5_rns16", 25, 16, 4, 5, 0, 12, rns16);
  add("f14x3_rns16", 32, 16, 4, 3, 1, 14, rns16);
  return cfg;
}

}  // namespace rnsw::cli
