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
#include <utility>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/corpus_selection.hpp"
#include "fairasr/fairness_metrics.hpp"
#include "fairasr/matched_ngram.hpp"
#include "fairasr/text_align.hpp"

namespace fairasr {

/// Inputs and options echoed into every report so numbers can be traced
/// back to what produced them. Kept in insertion order.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct CorpusScore {
  std::string name;
  std::size_t utterances = 0;
  WerResult wer;
};

/// Pooled WER of one corpus under `system`. Throws kEmptyCorpus,
/// kEmptyReference, kMissingHypothesis.
CorpusScore score_corpus(std::span<const UtteranceRecord> corpus, const std::string& name,
                         const std::string& system);

/// One row of a disparity table: a system evaluated on an AAE/MAE pair.
struct EvalReport {
  std::string system;
  CorpusScore aae;
  CorpusScore mae;
  DisparityResult disparity;
  std::optional<std::string> baseline;
  std::optional<DisparityReduction> reduction;
  std::optional<MatchedNgramReport> matched;
  OrderSet orders;
  ConfigEcho config;
};

/// Full-corpus WERs and disparity, plus the reduction against
/// `baseline_system` on the same corpora when given.
EvalReport evaluate_disparity(std::span<const UtteranceRecord> aae,
                              std::span<const UtteranceRecord> mae, const std::string& aae_name,
                              const std::string& mae_name, const std::string& system,
                              const std::optional<std::string>& baseline_system = std::nullopt);

/// Disparity from a previously written report JSON.
double read_report_disparity(const std::string& json_text);

std::string render_text(const EvalReport& report);
std::string render_json(const EvalReport& report);

std::string render_wer_text(const CorpusScore& score, const std::string& system,
                            const ConfigEcho& config);
std::string render_wer_json(const CorpusScore& score, const std::string& system,
                            const ConfigEcho& config);

std::string render_selection_text(const SelectionResult& result, const ConfigEcho& config);
std::string render_selection_json(const SelectionResult& result, const ConfigEcho& config);

std::string render_composition_text(const CompositionReport& report, const ConfigEcho& config);
std::string render_composition_json(const CompositionReport& report, const ConfigEcho& config);

std::string render_sweep_text(std::span<const PrCurvePoint> points, const ConfigEcho& config);
std::string render_sweep_json(std::span<const PrCurvePoint> points, const ConfigEcho& config);

/// TSV: segment id, source id, start and end in seconds (millisecond precision).
std::string render_segments(std::span<const Segment> segments);

}  // namespace fairasr
