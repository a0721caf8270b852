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

#include "rnsw/gemm.hpp"

#include <algorithm>
#include <sstream>

#include "rnsw/parallel.hpp"

namespace rnsw {

namespace {

constexpr std::int64_t kInt32Max = std::numeric_limits<std::int32_t>::max();
constexpr std::size_t kColBlock = 512;

template <typename T>
void check_shapes(const IntMatrix<T>& a, const IntMatrix<T>& b, const AccMatrix& acc) {
  if (a.cols() != b.rows() || acc.rows() != a.rows() || acc.cols() != b.cols()) {
    std::ostringstream os;
    os << "gemm shapes " << a.rows() << "x" << a.cols() << " * " << b.rows() << "x" << b.cols()
       << " -> " << acc.rows() << "x" << acc.cols();
    throw Error(ErrorCode::kShapeMismatch, os.str());
  }
}

void check_depth(std::size_t depth, std::int64_t a_bound, std::int64_t b_bound) {
  if (depth > max_exact_depth(a_bound, b_bound)) {
    std::ostringstream os;
    os << "depth " << depth << " with operand bounds " << a_bound << ", " << b_bound
       << " may overflow int32";
    throw Error(ErrorCode::kOverflowRisk, os.str());
  }
}

// Four inner-dimension rows at a time so each accumulator load/store is
// shared by four multiply-adds.
template <typename T>
void kernel(const IntMatrix<T>& a, const IntMatrix<T>& b, AccMatrix& acc, std::size_t row_begin,
            std::size_t row_end, std::size_t k_begin, std::size_t k_end) {
  const std::size_t cols = b.cols();
  const T* bdata = b.data().data();
  for (std::size_t jb = 0; jb < cols; jb += kColBlock) {
    const std::size_t width = std::min(kColBlock, cols - jb);
    for (std::size_t i = row_begin; i < row_end; ++i) {
      std::int32_t* __restrict out = acc.row(i).data() + jb;
      const T* arow = a.row(i).data();
      std::size_t k = k_begin;
      for (; k + 4 <= k_end; k += 4) {
        const std::int32_t a0 = arow[k], a1 = arow[k + 1], a2 = arow[k + 2], a3 = arow[k + 3];
        const T* __restrict b0 = bdata + k * cols + jb;
        const T* __restrict b1 = b0 + cols;
        const T* __restrict b2 = b1 + cols;
        const T* __restrict b3 = b2 + cols;
        for (std::size_t j = 0; j < width; ++j)
          out[j] += a0 * static_cast<std::int32_t>(b0[j]) + a1 * static_cast<std::int32_t>(b1[j]) +
                    a2 * static_cast<std::int32_t>(b2[j]) + a3 * static_cast<std::int32_t>(b3[j]);
      }
      for (; k < k_end; ++k) {
        const std::int32_t a0 = arow[k];
        const T* __restrict b0 = bdata + k * cols + jb;
        for (std::size_t j = 0; j < width; ++j) out[j] += a0 * static_cast<std::int32_t>(b0[j]);
      }
    }
  }
}

}  // namespace

std::size_t max_exact_depth(std::int64_t a_bound, std::int64_t b_bound) {
  const std::int64_t per_term = std::max<std::int64_t>(1, a_bound * b_bound);
  return static_cast<std::size_t>(kInt32Max / per_term);
}

template <typename T>
void gemm_acc_block(const IntMatrix<T>& a, const IntMatrix<T>& b, AccMatrix& acc,
                    std::size_t row_begin, std::size_t row_end, std::size_t k_begin,
                    std::size_t k_end) {
  check_shapes(a, b, acc);
  if (row_begin > row_end || row_end > a.rows() || k_begin > k_end || k_end > a.cols())
    throw Error(ErrorCode::kShapeMismatch, "gemm block outside operand bounds");
  check_depth(k_end - k_begin, a.bound(), b.bound());
  kernel(a, b, acc, row_begin, row_end, k_begin, k_end);
}

template <typename T>
void gemm_acc(const IntMatrix<T>& a, const IntMatrix<T>& b, AccMatrix& acc) {
  check_shapes(a, b, acc);
  check_depth(a.cols(), a.bound(), b.bound());
  constexpr std::size_t kRowBlock = 16;
  const std::size_t blocks = (a.rows() + kRowBlock - 1) / kRowBlock;
  parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
    kernel(a, b, acc, begin * kRowBlock, std::min(a.rows(), end * kRowBlock), 0, a.cols());
  });
}

void reduce_mod_inplace(AccMatrix& acc, Modulus m) {
  for (auto& v : acc.data()) v = m.reduce32(v);
}

template void gemm_acc(const Int8Matrix&, const Int8Matrix&, AccMatrix&);
template void gemm_acc(const Int16Matrix&, const Int16Matrix&, AccMatrix&);
template void gemm_acc_block(const Int8Matrix&, const Int8Matrix&, AccMatrix&, std::size_t,
                             std::size_t, std::size_t, std::size_t);
template void gemm_acc_block(const Int16Matrix&, const Int16Matrix&, AccMatrix&, std::size_t,
                             std::size_t, std::size_t, std::size_t);

}  // namespace rnsw
