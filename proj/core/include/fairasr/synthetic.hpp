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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/dialect_scorer.hpp"
#include "fairasr/manifest.hpp"

namespace fairasr {

/// Error rates are fractions of the reference words of a variety. Errors
/// are planted by count (round(rate * words)), not sampled per word.
struct ErrorRates {
  double substitution = 0.0;
  double deletion = 0.0;
  double insertion = 0.0;
};

struct SystemPlan {
  std::string name;
  ErrorRates rates;
};

struct RegionWeight {
  std::string region;
  double weight = 1.0;
};

struct VarietySpec {
  std::string name;
  std::size_t utterances = 0;
  // Regions are assigned by exact share (largest remainder), then shuffled.
  std::vector<RegionWeight> regions;
  // Scores are uniform in [score_min, score_max).
  double score_min = 0.0;
  double score_max = 1.0;
  bool gold_positive = false;
  std::vector<SystemPlan> systems;
  // Embedding frames are N(shift, 1) per value.
  double embedding_shift = 0.0;
};

struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::size_t vocabulary_size = 50;
  std::vector<std::string> vocabulary;  // overrides vocabulary_size when set
  std::size_t min_words = 5;
  std::size_t max_words = 15;
  std::size_t noise_vocabulary_size = 64;
  double seconds_per_word = 0.4;
  std::size_t embedding_dim = 0;  // 0 disables embeddings
  std::size_t embedding_frames = 8;
  std::vector<VarietySpec> varieties;
};

/// Builds a spec from its JSON form; field names match the struct members.
/// Throws Error(kInvalidSpec) for malformed input.
SyntheticSpec parse_synthetic_spec(std::string_view json_text);

struct PlantedCounts {
  std::size_t ref_words = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t errors() const noexcept { return substitutions + deletions + insertions; }
  friend bool operator==(const PlantedCounts&, const PlantedCounts&) = default;
};

struct SyntheticCorpus {
  // Varieties in spec order; ids are "<variety>-<index>".
  Corpus records;
  // variety -> system -> planted counts
  std::map<std::string, std::map<std::string, PlantedCounts>> truth;
  GoldTable gold;
  // id -> frames, only when embedding_dim > 0
  std::map<std::string, EmbeddingFrames> embeddings;
};

/// Substituted and inserted words come from a noise vocabulary disjoint from
/// the reference vocabulary, and no utterance receives both deletions and
/// insertions. Under those two rules the minimal alignment of every
/// hypothesis reproduces the planted counts exactly.
/// Throws Error(kInvalidSpec) for out-of-range rates or infeasible plans.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

/// Relative path used for an utterance's embedding file.
std::string embedding_path_for(const std::string& id);

}  // namespace fairasr
