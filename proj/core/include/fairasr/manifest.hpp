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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/dialect_scorer.hpp"

namespace fairasr {

inline constexpr const char* kManifestSchema = "fairasr-manifest";
inline constexpr int kManifestVersion = 1;

/// Line-delimited JSON: an optional header line
///   {"schema": "fairasr-manifest", "version": 1}
/// followed by one utterance object per line. Blank lines are ignored.
struct Manifest {
  int version = kManifestVersion;
  Corpus records;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Errors carry the 1-based line number: kParseError, kDuplicateId,
/// kMissingRequiredField.
Manifest read_manifest(std::istream& in);
Manifest load_manifest(const std::filesystem::path& path);

/// Always writes the header line. References and hypotheses are written as
/// their normalized token text.
void write_manifest(std::ostream& out, const Manifest& manifest);

/// Two-column text: id, TAB, value. '#' lines and blank lines are skipped.
using ScoreTable = std::vector<std::pair<std::string, double>>;
using GoldTable = std::map<std::string, bool>;

ScoreTable read_scores(std::istream& in);
ScoreTable load_scores(const std::filesystem::path& path);
void write_scores(std::ostream& out, const ScoreTable& scores);

/// Labels are 1 (AAE) or 0 (non-AAE).
GoldTable read_gold(std::istream& in);
GoldTable load_gold(const std::filesystem::path& path);
void write_gold(std::ostream& out, const GoldTable& gold);

/// Overwrites record scores from a score table. An id missing from the
/// corpus is an Error(kInvalidArgument).
void apply_scores(Corpus& corpus, const ScoreTable& scores);

/// Reads the frames referenced by `record.embedding`, resolved against
/// `base_dir`. Error(kMissingEmbedding) if the record has none.
EmbeddingFrames load_embedding(const UtteranceRecord& record,
                               const std::filesystem::path& base_dir);

}  // namespace fairasr
