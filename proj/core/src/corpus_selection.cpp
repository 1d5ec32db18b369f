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

#include "fairasr/corpus_selection.hpp"

#include <cmath>
#include <fstream>

#include "fairasr/error.hpp"
#include "fairasr/random.hpp"

namespace fairasr {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const double& require_score(const UtteranceRecord& rec) {
  if (!rec.score) {
    throw Error(ErrorKind::kMissingScore, "utterance '" + rec.id + "' has no dialect score");
  }
  return *rec.score;
}

void tally(CompositionRow& row, Partition p) {
  ++row.region_count;
  switch (p) {
    case Partition::kAae: ++row.aae_count; break;
    case Partition::kNonAae: ++row.mae_count; break;
    case Partition::kExcluded: ++row.excluded_count; break;
  }
}

}  // namespace

RegionSet::RegionSet(std::string name, std::set<std::string> members)
    : name_(std::move(name)), members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "region set '" + name_ + "' is empty");
  }
}

RegionSet RegionSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open region set " + path.string());
  std::set<std::string> members;
  std::string line;
  while (std::getline(in, line)) {
    const std::string tag = trim(line);
    if (tag.empty() || tag.front() == '#') continue;
    members.insert(tag);
  }
  return RegionSet(path.stem().string(), std::move(members));
}

bool RegionSet::contains(std::string_view tag) const {
  return members_.find(std::string(tag)) != members_.end();
}

void ScoreThresholds::validate() const {
  if (!(0.0 <= mae && mae <= aae && aae <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "thresholds need 0 <= mae_threshold <= aae_threshold <= 1");
  }
}

std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::kAae: return "aae";
    case Partition::kNonAae: return "mae";
    case Partition::kExcluded: return "excluded";
  }
  return "unknown";
}

Partition classify_score(double score, const ScoreThresholds& thresholds) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "dialect score outside [0, 1]");
  }
  if (score >= thresholds.aae) return Partition::kAae;
  if (score < thresholds.mae) return Partition::kNonAae;
  return Partition::kExcluded;
}

Corpus filter_by_region(std::span<const UtteranceRecord> corpus, const RegionSet& regions) {
  Corpus out;
  for (const auto& rec : corpus) {
    if (rec.region && regions.contains(*rec.region)) out.push_back(rec);
  }
  return out;
}

double SelectionResult::fraction(std::size_t count) const noexcept {
  const std::size_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n);
}

SelectionResult partition_by_score(std::span<const UtteranceRecord> corpus,
                                   const ScoreThresholds& thresholds) {
  thresholds.validate();
  SelectionResult result;
  for (const auto& rec : corpus) {
    switch (classify_score(require_score(rec), thresholds)) {
      case Partition::kAae: result.aae_ids.push_back(rec.id); break;
      case Partition::kNonAae: result.mae_ids.push_back(rec.id); break;
      case Partition::kExcluded: result.excluded_ids.push_back(rec.id); break;
    }
  }
  return result;
}

SelectionResult select_utterances(std::span<const UtteranceRecord> corpus,
                                  const SelectionConfig& config) {
  return partition_by_score(filter_by_region(corpus, config.region_set), config.thresholds);
}

double CompositionReport::of_total(std::size_t count) const noexcept {
  return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
}

CompositionReport composition_report(std::span<const UtteranceRecord> corpus,
                                     std::span<const RegionSet> region_sets,
                                     const ScoreThresholds& thresholds) {
  thresholds.validate();
  CompositionReport report;
  report.total = corpus.size();
  report.overall.name = "all";
  for (const auto& set : region_sets) report.rows.push_back({set.name(), 0, 0, 0, 0});

  for (const auto& rec : corpus) {
    const Partition p = classify_score(require_score(rec), thresholds);
    tally(report.overall, p);
    if (!rec.region) continue;
    for (std::size_t k = 0; k < region_sets.size(); ++k) {
      if (region_sets[k].contains(*rec.region)) tally(report.rows[k], p);
    }
  }
  return report;
}

std::vector<Segment> segment_longform(std::string_view id, double duration_seconds,
                                      std::uint64_t seed) {
  if (!(duration_seconds >= 0.0) || !std::isfinite(duration_seconds)) {
    throw Error(ErrorKind::kInvalidArgument, "recording duration must be finite and non-negative");
  }
  const auto duration_ms = static_cast<std::int64_t>(std::floor(duration_seconds * 1000.0));
  Rng rng(mix_seed(seed, id));
  std::vector<Segment> out;
  std::int64_t t = 0;
  while (duration_ms - t >= kMinSegmentMs) {
    const auto length = kMinSegmentMs + static_cast<std::int64_t>(
                                            rng.index(kMaxSegmentMs - kMinSegmentMs + 1));
    if (t + length >= duration_ms) {
      out.push_back({std::string(id), t, duration_ms});
      break;
    }
    out.push_back({std::string(id), t, t + length});
    t += length;
  }
  return out;
}

}  // namespace fairasr
