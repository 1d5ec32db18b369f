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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairasr/text_align.hpp"

namespace fairasr {

/// One utterance of a corpus. Only `id` and `reference` are required.
struct UtteranceRecord {
  std::string id;
  TokenSeq reference;
  std::optional<std::string> region;
  std::optional<double> score;
  std::optional<double> duration;
  // Path to an out-of-line embedding-frame file, relative to the manifest.
  std::optional<std::string> embedding;
  std::optional<std::string> variety;
  std::map<std::string, TokenSeq> hypotheses;

  /// Hypothesis for `system`, or Error(kMissingHypothesis).
  const TokenSeq& hypothesis(const std::string& system) const;

  friend bool operator==(const UtteranceRecord&, const UtteranceRecord&) = default;
};

using Corpus = std::vector<UtteranceRecord>;

}  // namespace fairasr
