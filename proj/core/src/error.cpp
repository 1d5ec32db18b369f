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

#include "fairasr/error.hpp"

namespace fairasr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyReference: return "EmptyReference";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kZeroDenominator: return "ZeroDenominator";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kSingleClassDataset: return "SingleClassDataset";
    case ErrorKind::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::kMissingScore: return "MissingScore";
    case ErrorKind::kMissingHypothesis: return "MissingHypothesis";
    case ErrorKind::kMissingEmbedding: return "MissingEmbedding";
    case ErrorKind::kNgramNotFound: return "NgramNotFound";
    case ErrorKind::kNoCommonNgrams: return "NoCommonNgrams";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kMissingRequiredField: return "MissingRequiredField";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string decorate(const std::string& message,
                     const std::optional<std::size_t>& line) {
  if (!line) return message;
  return "line " + std::to_string(*line) + ": " + message;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(message, line)), kind_(kind), line_(line) {}

}  // namespace fairasr
