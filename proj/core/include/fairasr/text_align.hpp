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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairasr {

/// An ordered sequence of word tokens. Tokens are never empty and never
/// contain whitespace; construction through `normalize` or `from_tokens`
/// enforces this.
class TokenSeq {
 public:
  TokenSeq() = default;

  /// Wraps already-tokenized words. Throws Error(kInvalidArgument) if any
  /// token is empty or contains whitespace.
  static TokenSeq from_tokens(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  std::span<const std::string> tokens() const noexcept { return tokens_; }
  auto begin() const noexcept { return tokens_.begin(); }
  auto end() const noexcept { return tokens_.end(); }

  /// Tokens joined by single spaces.
  std::string join() const;

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// Lowercases ASCII letters, strips punctuation except apostrophes and
/// hyphens that sit inside a word, and splits on whitespace. Bytes >= 0x80
/// are kept verbatim so UTF-8 words survive.
TokenSeq normalize(std::string_view raw_text);

enum class EditKind { kMatch, kSubstitution, kDeletion, kInsertion };

std::string_view to_string(EditKind kind);

struct EditOp {
  EditKind kind;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  bool is_error() const noexcept { return kind != EditKind::kMatch; }
  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;

  /// Number of substitution, deletion and insertion ops.
  std::size_t cost() const noexcept;
};

/// Minimal-cost Levenshtein alignment with unit costs. Among equal-cost
/// paths, those with the most substitutions win; remaining ties go to the
/// lexicographically smallest op sequence read left to right, ranking
/// match < substitution < deletion < insertion.
Alignment align(const TokenSeq& ref, const TokenSeq& hyp);

struct WerResult {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_words = 0;

  std::size_t errors() const noexcept {
    return substitutions + deletions + insertions;
  }
  /// errors / ref_words. Not clamped; insertion-heavy hypotheses exceed 1.
  double wer() const noexcept;

  WerResult& operator+=(const WerResult& other) noexcept;
  friend bool operator==(const WerResult&, const WerResult&) = default;
};

/// Tallies the ops of an alignment. ref_words is alignment.ref_len.
WerResult count_errors(const Alignment& alignment);

/// Throws Error(kEmptyReference) if `ref` is empty.
WerResult wer(const TokenSeq& ref, const TokenSeq& hyp);

/// Micro-averaged WER: counts are summed over pairs before dividing.
/// Throws Error(kEmptyCorpus) for no pairs, Error(kEmptyReference) if any
/// reference is empty.
WerResult corpus_wer(std::span<const std::pair<TokenSeq, TokenSeq>> pairs);

}  // namespace fairasr
