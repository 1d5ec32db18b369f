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

#include "fairasr/fairness_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairasr/error.hpp"

namespace fairasr {
namespace {

void require_wer(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " must be a finite non-negative WER");
  }
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

DisparityResult disparity(double wer_aae, double wer_mae) {
  require_wer(wer_aae, "wer_aae");
  require_wer(wer_mae, "wer_mae");
  if (wer_mae == 0.0) {
    throw Error(ErrorKind::kZeroDenominator, "MAE WER is zero; disparity is undefined");
  }
  return {wer_aae, wer_mae, (wer_aae - wer_mae) / wer_mae};
}

DisparityResult disparity_or_zero(double wer_aae, double wer_mae) {
  if (wer_aae == 0.0 && wer_mae == 0.0) return {0.0, 0.0, 0.0};
  return disparity(wer_aae, wer_mae);
}

DisparityReduction disparity_reduction(double dis_old, double dis_new) {
  if (!std::isfinite(dis_old) || !std::isfinite(dis_new)) {
    throw Error(ErrorKind::kInvalidArgument, "disparities must be finite");
  }
  if (dis_old == 0.0) {
    throw Error(ErrorKind::kZeroDenominator,
                "old disparity is zero; reduction is undefined");
  }
  return {dis_old, dis_new, (dis_old - dis_new) / dis_old};
}

PrCurvePoint pr_at_threshold(std::span<const ScoredLabel> scores, double threshold) {
  if (scores.empty()) throw Error(ErrorKind::kEmptyInput, "no scored labels");
  PrCurvePoint p;
  p.threshold = threshold;
  for (const auto& s : scores) {
    const bool predicted = s.score >= threshold;
    if (predicted && s.positive) ++p.tp;
    else if (predicted) ++p.fp;
    else if (s.positive) ++p.fn;
    else ++p.tn;
  }
  p.precision = ratio(p.tp, p.tp + p.fp);
  p.recall = ratio(p.tp, p.tp + p.fn);
  return p;
}

std::vector<PrCurvePoint> pr_sweep(std::span<const ScoredLabel> scores,
                                   std::span<const double> thresholds) {
  if (scores.empty()) throw Error(ErrorKind::kEmptyInput, "no scored labels");
  if (thresholds.empty()) throw Error(ErrorKind::kEmptyInput, "no thresholds");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error(ErrorKind::kInvalidArgument, "thresholds must be ascending");
  }

  std::vector<double> pos;
  std::vector<double> neg;
  for (const auto& s : scores) (s.positive ? pos : neg).push_back(s.score);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  // Number of values >= t in a sorted vector.
  auto at_or_above = [](const std::vector<double>& v, double t) {
    return static_cast<std::size_t>(v.end() - std::lower_bound(v.begin(), v.end(), t));
  };

  std::vector<PrCurvePoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    PrCurvePoint p;
    p.threshold = t;
    p.tp = at_or_above(pos, t);
    p.fn = pos.size() - p.tp;
    p.fp = at_or_above(neg, t);
    p.tn = neg.size() - p.fp;
    p.precision = ratio(p.tp, p.tp + p.fp);
    p.recall = ratio(p.tp, p.tp + p.fn);
    out.push_back(p);
  }
  return out;
}

std::vector<double> threshold_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw Error(ErrorKind::kInvalidArgument, "grid needs lo <= hi and step > 0");
  }
  std::vector<double> grid;
  // Computed by index and snapped to 1e-9 so 0:1:0.05 yields exactly 0.7,
  // not 0.7000000000000001.
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double raw = lo + static_cast<double>(k) * step;
    grid.push_back(std::round(raw * 1e9) / 1e9);
  }
  return grid;
}

}  // namespace fairasr
