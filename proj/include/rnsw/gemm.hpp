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
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "rnsw/error.hpp"
#include "rnsw/matrix.hpp"
#include "rnsw/residue.hpp"

namespace rnsw {

/// Dense row-major 8- or 16-bit operand for gemm_acc. `bound` is the
/// largest magnitude any entry may take. It defaults to 2^{bits-1}, so -128
/// is a legal int8 operand, and may be tightened (e.g. to (m-1)/2 for
/// balanced residues) so the overflow check in gemm_acc admits longer
/// reductions.
template <typename T>
class IntMatrix {
  static_assert(std::is_same_v<T, std::int8_t> || std::is_same_v<T, std::int16_t>);

 public:
  static constexpr int kElementBits = 8 * sizeof(T);
  static constexpr std::int32_t kDefaultBound =
      -static_cast<std::int32_t>(std::numeric_limits<T>::min());

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int32_t bound = kDefaultBound)
      : rows_(rows), cols_(cols), bound_(bound), data_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw Error(ErrorCode::kShapeMismatch, "empty IntMatrix");
    if (bound < 0 || bound > kDefaultBound)
      throw Error(ErrorCode::kInvalidArgument, "IntMatrix bound exceeds element width");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int32_t bound() const noexcept { return bound_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  T operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Checks every entry against the bound.
  bool valid() const noexcept {
    for (const T v : data_)
      if (v > bound_ || v < -bound_) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::int32_t bound_ = kDefaultBound;
  std::vector<T> data_;
};

using Int8Matrix = IntMatrix<std::int8_t>;
using Int16Matrix = IntMatrix<std::int16_t>;
using AccMatrix = Matrix<std::int32_t>;

/// Largest inner dimension for which a.bound * b.bound * k fits int32.
std::size_t max_exact_depth(std::int64_t a_bound, std::int64_t b_bound);

/// acc += a * b in exact 32-bit arithmetic.
/// Throws Error(kShapeMismatch) on inconsistent shapes and
/// Error(kOverflowRisk) when a.cols() * a.bound() * b.bound() > 2^31 - 1;
/// callers split longer reductions and fold between chunks.
template <typename T>
void gemm_acc(const IntMatrix<T>& a, const IntMatrix<T>& b, AccMatrix& acc);

/// Same product restricted to rows [row_begin, row_end) of a and acc and to
/// the inner range [k_begin, k_end). Shape and overflow checks as above.
template <typename T>
void gemm_acc_block(const IntMatrix<T>& a, const IntMatrix<T>& b, AccMatrix& acc,
                    std::size_t row_begin, std::size_t row_end, std::size_t k_begin,
                    std::size_t k_end);

/// Folds every accumulator into the balanced range of m.
void reduce_mod_inplace(AccMatrix& acc, Modulus m);

extern template void gemm_acc(const Int8Matrix&, const Int8Matrix&, AccMatrix&);
extern template void gemm_acc(const Int16Matrix&, const Int16Matrix&, AccMatrix&);
extern template void gemm_acc_block(const Int8Matrix&, const Int8Matrix&, AccMatrix&, std::size_t,
                                    std::size_t, std::size_t, std::size_t);
extern template void gemm_acc_block(const Int16Matrix&, const Int16Matrix&, AccMatrix&,
                                    std::size_t, std::size_t, std::size_t, std::size_t);

}  // namespace rnsw
