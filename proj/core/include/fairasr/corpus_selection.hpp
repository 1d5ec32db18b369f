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
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairasr/corpus.hpp"

namespace fairasr {

/// A named set of opaque region tags, e.g. the most populated metro areas
/// or southern states. Never empty.
class RegionSet {
 public:
  RegionSet(std::string name, std::set<std::string> members);

  /// One tag per line; blank lines and lines starting with '#' are skipped.
  /// The set is named after the file stem.
  static RegionSet load(const std::filesystem::path& path);

  const std::string& name() const noexcept { return name_; }
  const std::set<std::string>& members() const noexcept { return members_; }
  bool contains(std::string_view tag) const;

 private:
  std::string name_;
  std::set<std::string> members_;
};

/// Score >= aae is AAE, score < mae is non-AAE, anything between is
/// excluded. Requires 0 <= mae <= aae <= 1.
struct ScoreThresholds {
  double aae = 0.7;
  double mae = 0.4;

  void validate() const;
};

struct SelectionConfig {
  RegionSet region_set;
  ScoreThresholds thresholds;
};

enum class Partition { kAae, kNonAae, kExcluded };

std::string_view to_string(Partition p);

/// Throws Error(kInvalidArgument) for a score outside [0, 1].
Partition classify_score(double score, const ScoreThresholds& thresholds);

/// Utterances whose region tag is in the set, order preserved. Records
/// without a region never match.
Corpus filter_by_region(std::span<const UtteranceRecord> corpus, const RegionSet& regions);

struct SelectionResult {
  std::vector<std::string> aae_ids;
  std::vector<std::string> mae_ids;
  std::vector<std::string> excluded_ids;

  std::size_t total() const noexcept {
    return aae_ids.size() + mae_ids.size() + excluded_ids.size();
  }
  /// Share of `count` in total(); 0 for an empty selection.
  double fraction(std::size_t count) const noexcept;
};

/// Throws Error(kMissingScore) if any utterance has no score.
SelectionResult partition_by_score(std::span<const UtteranceRecord> corpus,
                                   const ScoreThresholds& thresholds);

/// Region filter followed by score partition.
SelectionResult select_utterances(std::span<const UtteranceRecord> corpus,
                                  const SelectionConfig& config);

struct CompositionRow {
  std::string name;
  std::size_t region_count = 0;
  std::size_t aae_count = 0;
  std::size_t mae_count = 0;
  std::size_t excluded_count = 0;
};

/// Per-region counts; rows may overlap when region sets share tags.
/// `overall` covers the whole corpus without a region filter.
struct CompositionReport {
  std::size_t total = 0;
  std::vector<CompositionRow> rows;
  CompositionRow overall;

  /// count / total, the share of the full corpus.
  double of_total(std::size_t count) const noexcept;
};

CompositionReport composition_report(std::span<const UtteranceRecord> corpus,
                                     std::span<const RegionSet> region_sets,
                                     const ScoreThresholds& thresholds);

inline constexpr std::int64_t kMinSegmentMs = 5000;
inline constexpr std::int64_t kMaxSegmentMs = 20000;

/// A cut of a long recording. Times are integer milliseconds so lengths
/// compare exactly against the 5-20 s bounds.
struct Segment {
  std::string source_id;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;

  std::int64_t length_ms() const noexcept { return end_ms - start_ms; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Greedy left-to-right cuts with lengths drawn uniformly from [5, 20] s at
/// millisecond resolution. When a draw would reach past the end, the
/// remainder becomes the last segment if it is at least 5 s and is dropped
/// otherwise. Sub-millisecond duration is truncated. The stream is seeded
/// from (seed, id), so results are deterministic per recording.
std::vector<Segment> segment_longform(std::string_view id, double duration_seconds,
                                      std::uint64_t seed);

}  // namespace fairasr
