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

#include "fairasr/matched_ngram.hpp"

#include <algorithm>

#include "fairasr/error.hpp"

namespace fairasr {
namespace {

std::vector<std::size_t> distinct_utterances(std::span<const NgramOccurrence> occ) {
  std::vector<std::size_t> out;
  for (const auto& o : occ) {
    if (out.empty() || out.back() != o.utterance) out.push_back(o.utterance);
  }
  return out;
}

// Lazily aligns each utterance of one corpus against its hypothesis.
class AlignmentCache {
 public:
  AlignmentCache(std::span<const UtteranceRecord> corpus, const std::string& system)
      : corpus_(corpus), system_(system), cache_(corpus.size()) {}

  const Alignment& get(std::size_t utterance) {
    auto& slot = cache_.at(utterance);
    if (!slot) {
      const auto& rec = corpus_[utterance];
      slot = align(rec.reference, rec.hypothesis(system_));
    }
    return *slot;
  }

 private:
  std::span<const UtteranceRecord> corpus_;
  const std::string& system_;
  std::vector<std::optional<Alignment>> cache_;
};

}  // namespace

std::string NgramKey::join() const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::size_t NgramKeyHash::operator()(const NgramKey& key) const noexcept {
  std::size_t h = key.words.size();
  for (const auto& w : key.words) {
    h ^= std::hash<std::string>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

NgramIndex extract_ngrams(std::span<const UtteranceRecord> corpus,
                          const OrderSet& orders) {
  if (orders.empty() || *orders.begin() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "n-gram orders must be non-empty and >= 1");
  }
  NgramIndex index;
  NgramKey key;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const auto tokens = corpus[u].reference.tokens();
    for (std::size_t order : orders) {
      if (order > tokens.size()) break;
      for (std::size_t start = 0; start + order <= tokens.size(); ++start) {
        key.words.assign(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                         tokens.begin() + static_cast<std::ptrdiff_t>(start + order));
        index[key].push_back({u, start});
      }
    }
  }
  return index;
}

std::vector<NgramKey> common_ngrams(const NgramIndex& a, const NgramIndex& b) {
  const NgramIndex& small = a.size() <= b.size() ? a : b;
  const NgramIndex& large = a.size() <= b.size() ? b : a;
  std::vector<NgramKey> out;
  for (const auto& [key, occ] : small) {
    if (large.contains(key)) out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatchedPair> pair_utterances(const NgramKey& ngram,
                                         std::span<const NgramOccurrence> occ_a,
                                         std::span<const NgramOccurrence> occ_b) {
  if (occ_a.empty() || occ_b.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "pairing needs occurrences on both sides for '" + ngram.join() + "'");
  }
  const auto us = distinct_utterances(occ_a);
  const auto vs = distinct_utterances(occ_b);
  const std::size_t p = std::min(us.size(), vs.size());
  std::vector<MatchedPair> out;
  out.reserve(p);
  for (std::size_t k = 0; k < p; ++k) out.push_back({ngram, us[k], vs[k]});
  return out;
}

WerResult restrict_to_ngram(const Alignment& alignment, const TokenSeq& ref,
                            const NgramKey& ngram) {
  const auto tokens = ref.tokens();
  const auto hit = std::search(tokens.begin(), tokens.end(), ngram.words.begin(),
                               ngram.words.end());
  if (ngram.words.empty() || hit == tokens.end()) {
    throw Error(ErrorKind::kNgramNotFound,
                "n-gram '" + ngram.join() + "' not found in reference");
  }
  const auto first = static_cast<std::size_t>(hit - tokens.begin());
  const std::size_t last = first + ngram.order() - 1;

  // Ops are in reference order, so the kept edges are the contiguous run
  // from the op carrying `first` to the op carrying `last`.
  WerResult r;
  r.ref_words = ngram.order();
  bool inside = false;
  for (const auto& op : alignment.ops) {
    if (op.ref_index && *op.ref_index == first) inside = true;
    if (!inside) continue;
    switch (op.kind) {
      case EditKind::kMatch: break;
      case EditKind::kSubstitution: ++r.substitutions; break;
      case EditKind::kDeletion: ++r.deletions; break;
      case EditKind::kInsertion: ++r.insertions; break;
    }
    if (op.ref_index && *op.ref_index == last) break;
  }
  return r;
}

MatchedWerResult matched_wer(std::span<const MatchedPair> pairs,
                             std::span<const UtteranceRecord> corpus_a,
                             std::span<const UtteranceRecord> corpus_b,
                             const std::string& system) {
  if (pairs.empty()) {
    throw Error(ErrorKind::kNoCommonNgrams, "no matched n-gram pairs to score");
  }
  AlignmentCache cache_a(corpus_a, system);
  AlignmentCache cache_b(corpus_b, system);
  MatchedWerResult out;
  std::vector<const NgramKey*> keys;
  keys.reserve(pairs.size());
  for (const auto& pair : pairs) {
    out.side_a += restrict_to_ngram(cache_a.get(pair.utt_a),
                                    corpus_a[pair.utt_a].reference, pair.ngram);
    out.side_b += restrict_to_ngram(cache_b.get(pair.utt_b),
                                    corpus_b[pair.utt_b].reference, pair.ngram);
    keys.push_back(&pair.ngram);
  }
  std::sort(keys.begin(), keys.end(),
            [](const NgramKey* x, const NgramKey* y) { return *x < *y; });
  auto last = std::unique(keys.begin(), keys.end(),
                          [](const NgramKey* x, const NgramKey* y) { return *x == *y; });
  out.pair_count = pairs.size();
  out.unique_ngram_count = static_cast<std::size_t>(last - keys.begin());
  return out;
}

MatchedNgramReport matched_ngram_report(std::span<const UtteranceRecord> corpus_aae,
                                        std::span<const UtteranceRecord> corpus_mae,
                                        const std::string& system,
                                        const OrderSet& orders,
                                        const std::optional<std::string>& baseline_system) {
  if (corpus_aae.empty() || corpus_mae.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "matched n-gram evaluation needs two non-empty corpora");
  }
  const NgramIndex index_aae = extract_ngrams(corpus_aae, orders);
  const NgramIndex index_mae = extract_ngrams(corpus_mae, orders);
  const auto common = common_ngrams(index_aae, index_mae);

  std::vector<MatchedPair> pairs;
  for (const auto& key : common) {
    auto batch = pair_utterances(key, index_aae.at(key), index_mae.at(key));
    pairs.insert(pairs.end(), std::make_move_iterator(batch.begin()),
                 std::make_move_iterator(batch.end()));
  }

  MatchedNgramReport report;
  report.common_ngram_count = common.size();
  report.result = matched_wer(pairs, corpus_aae, corpus_mae, system);
  report.disparity =
      disparity_or_zero(report.result.side_a.wer(), report.result.side_b.wer());
  if (baseline_system) {
    const auto base = matched_wer(pairs, corpus_aae, corpus_mae, *baseline_system);
    const auto base_dis = disparity_or_zero(base.side_a.wer(), base.side_b.wer());
    report.reduction = disparity_reduction(base_dis.disparity, report.disparity.disparity);
  }
  return report;
}

}  // namespace fairasr
