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

#include "fairasr/text_align.hpp"

#include <algorithm>
#include <cstdint>

#include "fairasr/error.hpp"

namespace fairasr {
namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_joiner(unsigned char c) { return c == '\'' || c == '-'; }

// Keeps word bytes and joiners, then trims joiners from both ends so only
// intra-word apostrophes and hyphens remain.
std::string clean_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (is_word_byte(c) || is_joiner(c)) {
      out.push_back(static_cast<char>(c));
    }
  }
  std::size_t first = 0;
  while (first < out.size() && is_joiner(out[first])) ++first;
  std::size_t last = out.size();
  while (last > first && is_joiner(out[last - 1])) --last;
  return out.substr(first, last - first);
}

}  // namespace

TokenSeq TokenSeq::from_tokens(std::vector<std::string> tokens) {
  for (const auto& t : tokens) {
    if (t.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "token sequence has an empty token");
    }
    if (std::any_of(t.begin(), t.end(),
                    [](char c) { return is_space(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorKind::kInvalidArgument,
                  "token contains whitespace: '" + t + "'");
    }
  }
  TokenSeq seq;
  seq.tokens_ = std::move(tokens);
  return seq;
}

std::string TokenSeq::join() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens_[i];
  }
  return out;
}

TokenSeq normalize(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < raw_text.size()) {
    while (i < raw_text.size() && is_space(static_cast<unsigned char>(raw_text[i]))) ++i;
    std::size_t start = i;
    while (i < raw_text.size() && !is_space(static_cast<unsigned char>(raw_text[i]))) ++i;
    if (i > start) {
      std::string word = clean_word(raw_text.substr(start, i - start));
      if (!word.empty()) tokens.push_back(std::move(word));
    }
  }
  return TokenSeq::from_tokens(std::move(tokens));
}

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch: return "match";
    case EditKind::kSubstitution: return "substitution";
    case EditKind::kDeletion: return "deletion";
    case EditKind::kInsertion: return "insertion";
  }
  return "unknown";
}

std::size_t Alignment::cost() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [](const EditOp& op) { return op.is_error(); }));
}

Alignment align(const TokenSeq& ref, const TokenSeq& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t stride = m + 1;

  // Paths are ranked by edit cost, then by substitution count (more is
  // better), then by reading order. Both keys fold into one additive score
  // cost * B - substitutions with B > min(n, m). The substitution count is
  // the same whichever side is the reference, so error counts stay symmetric
  // under swapping ref and hyp.
  const std::uint64_t b = std::min(n, m) + 1;
  const std::uint64_t match_step = 0;
  const std::uint64_t sub_step = b - 1;
  const std::uint64_t gap_step = b;

  // suffix[i * stride + j] scores the best path from (i, j) to the end.
  // Walking forward over a suffix table lets the tie-break be applied in
  // reading order.
  std::vector<std::uint64_t> suffix((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& {
    return suffix[i * stride + j];
  };
  for (std::size_t j = 0; j <= m; ++j) at(n, j) = (m - j) * gap_step;
  for (std::size_t i = n; i-- > 0;) {
    at(i, m) = (n - i) * gap_step;
    for (std::size_t j = m; j-- > 0;) {
      const std::uint64_t diag = at(i + 1, j + 1) + (ref[i] == hyp[j] ? match_step : sub_step);
      const std::uint64_t del = at(i + 1, j) + gap_step;
      const std::uint64_t ins = at(i, j + 1) + gap_step;
      at(i, j) = std::min({diag, del, ins});
    }
  }

  Alignment out;
  out.ref_len = n;
  out.hyp_len = m;
  out.ops.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const std::uint64_t here = at(i, j);
    if (i < n && j < m) {
      const bool same = ref[i] == hyp[j];
      if (at(i + 1, j + 1) + (same ? match_step : sub_step) == here) {
        out.ops.push_back({same ? EditKind::kMatch : EditKind::kSubstitution, i, j});
        ++i;
        ++j;
        continue;
      }
    }
    if (i < n && at(i + 1, j) + gap_step == here) {
      out.ops.push_back({EditKind::kDeletion, i, std::nullopt});
      ++i;
    } else {
      out.ops.push_back({EditKind::kInsertion, std::nullopt, j});
      ++j;
    }
  }
  return out;
}

double WerResult::wer() const noexcept {
  return static_cast<double>(errors()) / static_cast<double>(ref_words);
}

WerResult& WerResult::operator+=(const WerResult& other) noexcept {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  ref_words += other.ref_words;
  return *this;
}

WerResult count_errors(const Alignment& alignment) {
  WerResult r;
  r.ref_words = alignment.ref_len;
  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::kMatch: break;
      case EditKind::kSubstitution: ++r.substitutions; break;
      case EditKind::kDeletion: ++r.deletions; break;
      case EditKind::kInsertion: ++r.insertions; break;
    }
  }
  return r;
}

WerResult wer(const TokenSeq& ref, const TokenSeq& hyp) {
  if (ref.empty()) throw Error(ErrorKind::kEmptyReference, "reference has no tokens");
  return count_errors(align(ref, hyp));
}

WerResult corpus_wer(std::span<const std::pair<TokenSeq, TokenSeq>> pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyCorpus, "no reference/hypothesis pairs");
  WerResult total;
  for (const auto& [ref, hyp] : pairs) total += wer(ref, hyp);
  return total;
}

}  // namespace fairasr
