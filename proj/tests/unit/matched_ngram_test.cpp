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

#include <gtest/gtest.h>

#include <algorithm>

#include "fairasr/error.hpp"
#include "fairasr/format.hpp"
#include "fairasr/matched_ngram.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace fairasr {
namespace {

UtteranceRecord rec(const std::string& id, const std::string& ref, const std::string& hyp) {
  UtteranceRecord r;
  r.id = id;
  r.reference = normalize(ref);
  r.hypotheses["sys"] = normalize(hyp);
  return r;
}

NgramKey key(std::vector<std::string> w) { return NgramKey{std::move(w)}; }

std::vector<MatchedPair> all_pairs(const Corpus& a, const Corpus& b, const OrderSet& orders) {
  const auto ia = extract_ngrams(a, orders);
  const auto ib = extract_ngrams(b, orders);
  std::vector<MatchedPair> pairs;
  for (const auto& k : common_ngrams(ia, ib)) {
    auto p = pair_utterances(k, ia.at(k), ib.at(k));
    pairs.insert(pairs.end(), p.begin(), p.end());
  }
  return pairs;
}

TEST(ExtractNgrams, RepeatedBigram) {
  const Corpus c{rec("u", "a b a b", "a b a b")};
  const auto idx = extract_ngrams(c, {2});
  ASSERT_EQ(idx.size(), 2u);
  EXPECT_EQ(idx.at(key({"a", "b"})), (std::vector<NgramOccurrence>{{0, 0}, {0, 2}}));
  EXPECT_EQ(idx.at(key({"b", "a"})), (std::vector<NgramOccurrence>{{0, 1}}));
}

TEST(ExtractNgrams, EmptyCorpusAndBadOrders) {
  EXPECT_TRUE(extract_ngrams({}, kDefaultOrders).empty());
  const Corpus c{rec("u", "a b", "a b")};
  EXPECT_THROW(extract_ngrams(c, {}), Error);
  EXPECT_THROW(extract_ngrams(c, {0}), Error);
}

TEST(ExtractNgrams, CountsMatchNestedLoops) {
  Rng rng(21);
  for (int it = 0; it < 50; ++it) {
    const Corpus c = gen::random_corpus(rng, "u", 3, 4, 8);
    const auto idx = extract_ngrams(c, {2, 3});
    std::size_t expected = 0;
    for (const auto& r : c) {
      for (std::size_t n : {2, 3}) expected += r.reference.size() >= n ? r.reference.size() - n + 1 : 0;
    }
    std::size_t got = 0;
    for (const auto& [k, occ] : idx) {
      got += occ.size();
      for (const auto& o : occ) {
        for (std::size_t t = 0; t < k.order(); ++t) EXPECT_EQ(c[o.utterance].reference[o.start + t], k.words[t]);
      }
      EXPECT_TRUE(std::is_sorted(occ.begin(), occ.end(), [](const auto& x, const auto& y) {
        return std::pair(x.utterance, x.start) < std::pair(y.utterance, y.start);
      }));
    }
    EXPECT_EQ(got, expected);
  }
}

TEST(CommonNgrams, DisjointIdenticalAndPlanted) {
  const Corpus a{rec("a0", "a b c", "a b c")};
  const Corpus b{rec("b0", "x y z", "x y z")};
  EXPECT_TRUE(common_ngrams(extract_ngrams(a, {2}), extract_ngrams(b, {2})).empty());

  const auto ia = extract_ngrams(a, {2, 3});
  auto all = common_ngrams(ia, ia);
  EXPECT_EQ(all.size(), ia.size());
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));

  // Exactly two shared bigrams: (p q) and (r s).
  const Corpus c{rec("c0", "a p q b", "a"), rec("c1", "r s c", "r")};
  const Corpus d{rec("d0", "x r s y", "x"), rec("d1", "p q z", "p")};
  EXPECT_EQ(common_ngrams(extract_ngrams(c, {2}), extract_ngrams(d, {2})),
            (std::vector<NgramKey>{key({"p", "q"}), key({"r", "s"})}));
}

TEST(PairUtterances, ZipsDistinctUtterances) {
  const auto k = key({"a", "b"});
  const std::vector<NgramOccurrence> three{{0, 0}, {0, 3}, {2, 1}, {5, 0}};
  const std::vector<NgramOccurrence> one{{4, 2}};
  EXPECT_EQ(pair_utterances(k, three, one), (std::vector<MatchedPair>{{k, 0, 4}}));
  const std::vector<NgramOccurrence> two_a{{1, 0}, {3, 0}};
  const std::vector<NgramOccurrence> two_b{{0, 0}, {2, 5}};
  EXPECT_EQ(pair_utterances(k, two_a, two_b), (std::vector<MatchedPair>{{k, 1, 0}, {k, 3, 2}}));
  EXPECT_THROW(pair_utterances(k, {}, one), Error);
}

TEST(RestrictToNgram, InnerSubstitution) {
  const auto ref = normalize("x the cat y");
  const auto a = align(ref, normalize("x the bat y"));
  const auto w = restrict_to_ngram(a, ref, key({"the", "cat"}));
  EXPECT_EQ(w.substitutions, 1u);
  EXPECT_EQ(w.ref_words, 2u);
  EXPECT_DOUBLE_EQ(w.wer(), 0.5);
}

TEST(RestrictToNgram, BoundaryInsertionsDiscarded) {
  const auto ref = normalize("the cat");
  const auto a = align(ref, normalize("a the cat b"));
  EXPECT_EQ(restrict_to_ngram(a, ref, key({"the", "cat"})).errors(), 0u);
}

TEST(RestrictToNgram, InnerInsertionKeptAndFirstOccurrenceUsed) {
  const auto ref = normalize("the cat the cat");
  const auto a = align(ref, normalize("the big cat the cat"));
  const auto w = restrict_to_ngram(a, ref, key({"the", "cat"}));
  EXPECT_EQ(w.insertions, 1u);
  EXPECT_EQ(w.ref_words, 2u);
  EXPECT_THROW(restrict_to_ngram(a, ref, key({"cat", "cat"})), Error);
}

TEST(MatchedWer, PerfectHypotheses) {
  const Corpus a{rec("a0", "one two three", "one two three")};
  const Corpus b{rec("b0", "zero one two", "zero one two")};
  const auto r = matched_ngram_report(a, b, "sys");
  EXPECT_EQ(r.result.side_a.errors(), 0u);
  EXPECT_EQ(r.result.side_b.errors(), 0u);
  EXPECT_EQ(r.result.pair_count, 1u);
  EXPECT_EQ(r.disparity.disparity, 0.0);
}

TEST(MatchedWer, ErrorsOutsideSpansIgnored) {
  // Shared phrase "red fox" is always recognized; every other word is wrong.
  Corpus a, b;
  for (int i = 0; i < 20; ++i) {
    a.push_back(rec("a" + std::to_string(i), "alpha red fox beta", "zzz red fox qqq"));
    b.push_back(rec("b" + std::to_string(i), "gamma delta red fox", "yyy www red fox"));
  }
  const auto r = matched_ngram_report(a, b, "sys", {2});
  EXPECT_EQ(r.result.side_a.errors(), 0u);
  EXPECT_EQ(r.result.side_b.errors(), 0u);
  EXPECT_EQ(r.result.unique_ngram_count, 1u);
  EXPECT_EQ(r.result.pair_count, 20u);
  const auto full = wer(a[0].reference, a[0].hypotheses.at("sys"));
  EXPECT_GT(full.errors(), 0u);
}

TEST(MatchedWer, SameCorpusGivesIdenticalSides) {
  Rng rng(23);
  for (int it = 0; it < 30; ++it) {
    const Corpus c = gen::random_corpus(rng, "u", 10, 4, 8);
    try {
      const auto r = matched_ngram_report(c, c, "sys");
      EXPECT_EQ(r.result.side_a, r.result.side_b);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kNoCommonNgrams);
    }
  }
}

TEST(MatchedWer, RefWordsAreOrderTimesSpans) {
  Rng rng(24);
  for (int it = 0; it < 50; ++it) {
    const Corpus a = gen::random_corpus(rng, "a", 8, 3, 8);
    const Corpus b = gen::random_corpus(rng, "b", 8, 3, 8);
    const auto pairs = all_pairs(a, b, {3});
    if (pairs.empty()) continue;
    const auto r = matched_wer(pairs, a, b, "sys");
    EXPECT_EQ(r.side_a.ref_words, 3 * pairs.size());
    EXPECT_EQ(r.side_b.ref_words, 3 * pairs.size());
    // Restricted counts never exceed the full alignment's.
    for (const auto& p : pairs) {
      const auto& ra = a[p.utt_a];
      const auto& hyp = ra.hypotheses.at("sys");
      EXPECT_LE(restrict_to_ngram(align(ra.reference, hyp), ra.reference, p.ngram).errors(),
                wer(ra.reference, hyp).errors());
    }
  }
}

TEST(MatchedWer, AgreesWithNestedLoopOracle) {
  Rng rng(25);
  for (int it = 0; it < 40; ++it) {
    const Corpus a = gen::random_corpus(rng, "a", 20, 6, 9);
    const Corpus b = gen::random_corpus(rng, "b", 20, 6, 9);
    const auto expected = oracle::matched_counts(a, b, "sys", {2, 3});
    const auto pairs = all_pairs(a, b, {2, 3});
    if (expected.pairs == 0) {
      EXPECT_THROW(matched_wer(pairs, a, b, "sys"), Error);
      continue;
    }
    const auto got = matched_wer(pairs, a, b, "sys");
    EXPECT_EQ(got.side_a.substitutions, expected.a.sub);
    EXPECT_EQ(got.side_a.deletions, expected.a.del);
    EXPECT_EQ(got.side_a.insertions, expected.a.ins);
    EXPECT_EQ(got.side_a.ref_words, expected.a.ref_words);
    EXPECT_EQ(got.side_b.substitutions, expected.b.sub);
    EXPECT_EQ(got.side_b.deletions, expected.b.del);
    EXPECT_EQ(got.side_b.insertions, expected.b.ins);
    EXPECT_EQ(got.side_b.ref_words, expected.b.ref_words);
    EXPECT_EQ(got.pair_count, expected.pairs);
    EXPECT_EQ(got.unique_ngram_count, expected.unique_ngrams);
  }
}

TEST(MatchedWer, TwiceTheErrorRateDoublesMatchedWer) {
  // Every utterance shares the bigram "k0 k1"; the AAE side substitutes its
  // second word in every second utterance, the MAE side in every fourth.
  Corpus a, b;
  for (int i = 0; i < 400; ++i) {
    const std::string id = std::to_string(i);
    a.push_back(rec("a" + id, "k0 k1 a" + id, i % 2 == 0 ? "k0 zz a" + id : "k0 k1 a" + id));
    b.push_back(rec("b" + id, "k0 k1 b" + id, i % 4 == 0 ? "k0 zz b" + id : "k0 k1 b" + id));
  }
  const auto r = matched_ngram_report(a, b, "sys", {2});
  EXPECT_DOUBLE_EQ(r.disparity.disparity, 1.0);
}

TEST(MatchedWer, Errors) {
  const Corpus a{rec("a0", "a b", "a b")};
  const Corpus b{rec("b0", "c d", "c d")};
  EXPECT_THROW(matched_ngram_report({}, b, "sys"), Error);
  try {
    matched_ngram_report(a, b, "sys");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoCommonNgrams);
  }
  try {
    matched_ngram_report(a, a, "other");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingHypothesis);
  }
}

TEST(MatchedReport, BaselineReduction) {
  Corpus a, b;
  for (int i = 0; i < 10; ++i) {
    const std::string id = std::to_string(i);
    auto ra = rec("a" + id, "k0 k1 x", "k0 k1 x");
    auto rb = rec("b" + id, "k0 k1 y", "k0 k1 y");
    ra.hypotheses["base"] = normalize(i < 4 ? "k0 zz x" : "k0 k1 x");
    rb.hypotheses["base"] = normalize(i < 2 ? "k0 zz y" : "k0 k1 y");
    ra.hypotheses["sys"] = normalize(i < 3 ? "k0 zz x" : "k0 k1 x");
    rb.hypotheses["sys"] = normalize(i < 2 ? "k0 zz y" : "k0 k1 y");
    a.push_back(ra);
    b.push_back(rb);
  }
  const auto r = matched_ngram_report(a, b, "sys", {2}, std::string("base"));
  ASSERT_TRUE(r.reduction.has_value());
  EXPECT_DOUBLE_EQ(r.reduction->dis_old, 1.0);
  EXPECT_DOUBLE_EQ(r.disparity.disparity, 0.5);
  EXPECT_DOUBLE_EQ(r.reduction->reduction, 0.5);
}

TEST(MatchedReport, TableEightBaselineFigures) {
  EXPECT_EQ(format_percent(disparity(0.021, 0.012).disparity), "75.0%");
}

}  // namespace
}  // namespace fairasr
