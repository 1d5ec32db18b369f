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
#include <vector>

namespace fairasr {

/// Relative WER increase of the AAE set over the MAE set. Signed: a
/// negative value means the AAE set is recognized better.
struct DisparityResult {
  double wer_aae = 0.0;
  double wer_mae = 0.0;
  double disparity = 0.0;
};

/// Relative shrinkage of disparity from an old system to a new one.
struct DisparityReduction {
  double dis_old = 0.0;
  double dis_new = 0.0;
  double reduction = 0.0;
};

/// (wer_aae - wer_mae) / wer_mae. Throws Error(kZeroDenominator) when
/// wer_mae == 0 and Error(kInvalidArgument) for negative or non-finite input.
DisparityResult disparity(double wer_aae, double wer_mae);

/// Like `disparity`, but two error-free sets have no disparity (0) instead
/// of an undefined ratio. Used by report paths where perfect systems are a
/// legitimate outcome.
DisparityResult disparity_or_zero(double wer_aae, double wer_mae);

/// (dis_old - dis_new) / dis_old. Throws Error(kZeroDenominator) when
/// dis_old == 0.
DisparityReduction disparity_reduction(double dis_old, double dis_new);

struct ScoredLabel {
  double score;
  bool positive;
};

struct PrCurvePoint {
  double threshold = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  // Undefined ratios (no predicted positives / no gold positives) are empty.
  std::optional<double> precision;
  std::optional<double> recall;
};

/// Predicts positive iff score >= threshold. Throws Error(kEmptyInput).
PrCurvePoint pr_at_threshold(std::span<const ScoredLabel> scores, double threshold);

/// One point per threshold. Thresholds must be ascending
/// (Error(kInvalidArgument) otherwise); throws Error(kEmptyInput) for no
/// scores or no thresholds.
std::vector<PrCurvePoint> pr_sweep(std::span<const ScoredLabel> scores,
                                   std::span<const double> thresholds);

/// Thresholds lo, lo+step, ..., up to and including hi (within 1e-9).
std::vector<double> threshold_grid(double lo, double hi, double step);

}  // namespace fairasr
