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

#include "rnsw/tensor_io.hpp"

#include <fstream>
#include <iterator>

#include "rnsw/error.hpp"

namespace rnsw {

namespace {

constexpr char kMagic[4] = {'Q', 'T', 'N', 'S'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::vector<std::uint8_t> header(const Dims4& dims, std::uint8_t bits) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kQtnsVersion);
  out.push_back(4);
  for (const auto d : dims) {
    if (d > 0xffffffffu) throw Error(ErrorCode::kIo, "dimension does not fit u32");
    put_u32(out, static_cast<std::uint32_t>(d));
  }
  out.push_back(bits);
  return out;
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw Error(ErrorCode::kIo, "truncated QTNS data");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  Dims4 dims{};
  std::uint8_t bits = 0;
  std::span<const std::uint8_t> payload;
};

Header parse_header(std::span<const std::uint8_t> bytes, std::uint8_t expected_bits) {
  Reader in(bytes);
  for (const char c : kMagic)
    if (in.u8() != static_cast<std::uint8_t>(c)) throw Error(ErrorCode::kIo, "bad QTNS magic");
  if (const auto v = in.u8(); v != kQtnsVersion)
    throw Error(ErrorCode::kIo, "unsupported QTNS version " + std::to_string(v));
  const auto rank = in.u8();
  if (rank != 4) throw Error(ErrorCode::kIo, "expected a rank-4 tensor, got rank " + std::to_string(rank));
  Header h;
  for (auto& d : h.dims) d = in.u32();
  h.bits = in.u8();
  if (h.bits != expected_bits)
    throw Error(ErrorCode::kIo, "expected " + std::to_string(expected_bits) + "-bit elements, got " +
                                    std::to_string(h.bits));
  h.payload = in.rest();
  const std::size_t count = h.dims[0] * h.dims[1] * h.dims[2] * h.dims[3];
  if (h.payload.size() != count * (h.bits / 8))
    throw Error(ErrorCode::kIo, "QTNS payload size does not match its dimensions");
  return h;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const QuantizedTensor& t) {
  auto out = header(t.dims(), 8);
  for (const auto v : t.data()) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

std::vector<std::uint8_t> encode_tensor(const ConvOutput& t) {
  auto out = header(t.dims, 32);
  out.reserve(out.size() + 4 * t.data.size());
  for (const auto v : t.data) put_u32(out, static_cast<std::uint32_t>(v));
  return out;
}

QuantizedTensor decode_quantized(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, 8);
  std::vector<std::int8_t> data(h.payload.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::int8_t>(h.payload[i]);
  return {h.dims, std::move(data)};
}

ConvOutput decode_output(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, 32);
  ConvOutput out{h.dims, std::vector<std::int32_t>(h.payload.size() / 4)};
  Reader in(h.payload);
  for (auto& v : out.data) v = static_cast<std::int32_t>(in.u32());
  return out;
}

void write_tensor(const std::filesystem::path& path, const QuantizedTensor& t) {
  write_file(path, encode_tensor(t));
}
void write_tensor(const std::filesystem::path& path, const ConvOutput& t) {
  write_file(path, encode_tensor(t));
}
QuantizedTensor read_quantized(const std::filesystem::path& path) {
  return decode_quantized(read_file(path));
}
ConvOutput read_output(const std::filesystem::path& path) { return decode_output(read_file(path)); }

}  // namespace rnsw
