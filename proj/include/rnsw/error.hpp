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

#include <stdexcept>
#include <string>
#include <string_view>

namespace rnsw {

enum class ErrorCode {
  kInvalidArgument,
  kNotCoprime,
  kOutOfRange,
  kSystemMismatch,
  kShapeMismatch,
  kOverflowRisk,
  kDynamicRangeExceeded,
  kUnsupportedStride,
  kIo,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kSystemMismatch: return "SystemMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kOverflowRisk: return "OverflowRisk";
    case ErrorCode::kDynamicRangeExceeded: return "DynamicRangeExceeded";
    case ErrorCode::kUnsupportedStride: return "UnsupportedStride";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can map it to a structured report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rnsw
