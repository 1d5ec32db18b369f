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
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/fairness_metrics.hpp"
#include "fairasr/text_align.hpp"

namespace fairasr {

/// A contiguous word n-gram.
struct NgramKey {
  std::vector<std::string> words;

  std::size_t order() const noexcept { return words.size(); }
  std::string join() const;

  friend auto operator<=>(const NgramKey&, const NgramKey&) = default;
  friend bool operator==(const NgramKey&, const NgramKey&) = default;
};

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& key) const noexcept;
};

/// Position of an n-gram: `utterance` indexes the corpus, `start` the
/// reference token where the n-gram begins.
struct NgramOccurrence {
  std::size_t utterance;
  std::size_t start;

  friend bool operator==(const NgramOccurrence&, const NgramOccurrence&) = default;
};

/// Occurrence lists are in corpus order, then position order.
using NgramIndex =
    std::unordered_map<NgramKey, std::vector<NgramOccurrence>, NgramKeyHash>;

using OrderSet = std::set<std::size_t>;

inline const OrderSet kDefaultOrders = {2, 3};

/// Every contiguous reference n-gram of each requested order.
/// Throws Error(kInvalidArgument) if `orders` is empty or contains 0.
NgramIndex extract_ngrams(std::span<const UtteranceRecord> corpus,
                          const OrderSet& orders);

/// Keys present in both indexes, sorted lexicographically.
std::vector<NgramKey> common_ngrams(const NgramIndex& a, const NgramIndex& b);

/// Utterances paired for one n-gram. Indices refer to the two corpora.
struct MatchedPair {
  NgramKey ngram;
  std::size_t utt_a;
  std::size_t utt_b;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Zips the distinct utterances of each occurrence list in corpus order,
/// yielding min(L, M) pairs. Each utterance is used at most once per n-gram.
/// Throws Error(kInvalidArgument) if either list is empty.
std::vector<MatchedPair> pair_utterances(const NgramKey& ngram,
                                         std::span<const NgramOccurrence> occ_a,
                                         std::span<const NgramOccurrence> occ_b);

struct MatchedWerResult {
  WerResult side_a;
  WerResult side_b;
  std::size_t pair_count = 0;
  std::size_t unique_ngram_count = 0;

  friend bool operator==(const MatchedWerResult&, const MatchedWerResult&) = default;
};

/// Restricts each utterance's full alignment to the first reference
/// occurrence of `ngram`. Ops whose ref_index falls in the span are kept,
/// plus insertions lying strictly between two span positions.
/// Throws Error(kNgramNotFound) if the n-gram is not in the reference.
WerResult restrict_to_ngram(const Alignment& alignment, const TokenSeq& ref,
                            const NgramKey& ngram);

/// Sums span-restricted error counts per side over all pairs.
/// Throws Error(kNoCommonNgrams) for an empty pair list and
/// Error(kMissingHypothesis) when an utterance lacks `system`.
MatchedWerResult matched_wer(std::span<const MatchedPair> pairs,
                             std::span<const UtteranceRecord> corpus_a,
                             std::span<const UtteranceRecord> corpus_b,
                             const std::string& system);

/// The full matched n-gram evaluation of an AAE corpus against an MAE corpus.
struct MatchedNgramReport {
  MatchedWerResult result;  // side_a is AAE, side_b is MAE
  DisparityResult disparity;
  std::optional<DisparityReduction> reduction;
  std::size_t common_ngram_count = 0;
};

/// Chains extraction, intersection, pairing and restricted scoring for
/// `system`. When `baseline_system` is given, its matched disparity on the
/// same pairs feeds the disparity reduction.
MatchedNgramReport matched_ngram_report(
    std::span<const UtteranceRecord> corpus_aae,
    std::span<const UtteranceRecord> corpus_mae, const std::string& system,
    const OrderSet& orders = kDefaultOrders,
    const std::optional<std::string>& baseline_system = std::nullopt);

}  // namespace fairasr
