// Copyright 2026 The fairasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairasr {

enum class ErrorKind {
  kEmptyReference,
  kEmptyCorpus,
  kEmptyInput,
  kZeroDenominator,
  kDimensionMismatch,
  kSingleClassDataset,
  kNonFiniteLoss,
  kMissingScore,
  kMissingHypothesis,
  kMissingEmbedding,
  kNgramNotFound,
  kNoCommonNgrams,
  kParseError,
  kDuplicateId,
  kMissingRequiredField,
  kInvalidSpec,
  kInvalidArgument,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `line()` is set for errors that
/// originate in a specific line of an input file.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace fairasr
