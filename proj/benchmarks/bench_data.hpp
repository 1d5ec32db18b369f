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

#include <string>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/random.hpp"

namespace fairasr::bench {

inline TokenSeq tokens(Rng& rng, std::size_t n, std::size_t vocab) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(rng.index(vocab)));
  return TokenSeq::from_tokens(std::move(out));
}

// Copies ref with roughly rate of the words substituted, dropped or doubled.
inline TokenSeq corrupt(Rng& rng, const TokenSeq& ref, double rate) {
  std::vector<std::string> out;
  for (const auto& w : ref) {
    if (rng.uniform01() >= rate) {
      out.push_back(w);
      continue;
    }
    switch (rng.index(3)) {
      case 0: out.push_back("noise"); break;
      case 1: break;
      default: out.push_back(w); out.push_back("noise"); break;
    }
  }
  return TokenSeq::from_tokens(std::move(out));
}

inline Corpus corpus(Rng& rng, const std::string& prefix, std::size_t utts, std::size_t words,
                     std::size_t vocab) {
  Corpus c;
  for (std::size_t i = 0; i < utts; ++i) {
    UtteranceRecord r;
    r.id = prefix + std::to_string(i);
    r.reference = tokens(rng, words, vocab);
    r.hypotheses["sys"] = corrupt(rng, r.reference, 0.1);
    c.push_back(std::move(r));
  }
  return c;
}

}  // namespace fairasr::bench
