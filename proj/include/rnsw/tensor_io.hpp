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
#include <span>
#include <vector>

#include "rnsw/layer.hpp"

namespace rnsw {

/// QTNS tensor file, all integers little-endian:
///
///   offset 0   "QTNS"                 magic
///          4   u8  version            (1)
///          5   u8  rank               (1..8)
///          6   u32 dims[rank]
///          .   u8  element_bits       (8 or 32)
///          .   data                   int8, or int32 little-endian
///
/// Activations and weights are written with element_bits 8, convolution
/// outputs with element_bits 32.
inline constexpr std::uint8_t kQtnsVersion = 1;

std::vector<std::uint8_t> encode_tensor(const QuantizedTensor& t);
std::vector<std::uint8_t> encode_tensor(const ConvOutput& t);

/// Throw Error(kIo) on a malformed buffer or the wrong element width/rank.
QuantizedTensor decode_quantized(std::span<const std::uint8_t> bytes);
ConvOutput decode_output(std::span<const std::uint8_t> bytes);

void write_tensor(const std::filesystem::path& path, const QuantizedTensor& t);
void write_tensor(const std::filesystem::path& path, const ConvOutput& t);
QuantizedTensor read_quantized(const std::filesystem::path& path);
ConvOutput read_output(const std::filesystem::path& path);

}  // namespace rnsw
