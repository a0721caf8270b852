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
#include <random>

#include "rnsw/layer.hpp"

namespace rnsw {

/// Reproducible generator: std::mt19937_64 (whose output sequence the C++
/// standard fixes) with value mappings defined here rather than by the
/// library's distributions, so a seed means the same data everywhere.
///   int8:            (next() >> 56) - 128
///   uniform(lo, hi): lo + next() % (hi - lo + 1)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::int8_t int8() { return static_cast<std::int8_t>(static_cast<int>(next() >> 56) - 128); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

 private:
  std::mt19937_64 engine_;
};

inline void fill_random(QuantizedTensor& t, Rng& rng) {
  for (auto& v : t.data()) v = rng.int8();
}

}  // namespace rnsw
