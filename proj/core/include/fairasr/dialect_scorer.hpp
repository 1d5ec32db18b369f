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

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace fairasr {

/// T x D matrix of encoder outputs, one frame per row. T >= 1, D >= 1 and
/// every value finite.
class EmbeddingFrames {
 public:
  explicit EmbeddingFrames(Eigen::MatrixXd frames);

  const Eigen::MatrixXd& matrix() const noexcept { return frames_; }
  Eigen::Index num_frames() const noexcept { return frames_.rows(); }
  Eigen::Index dim() const noexcept { return frames_.cols(); }

 private:
  Eigen::MatrixXd frames_;
};

enum class PoolingKind { kAverage, kMaximum, kAttentional };

std::string_view to_string(PoolingKind kind);
/// Accepts "average", "maximum", "attentional". Error(kInvalidArgument) otherwise.
PoolingKind parse_pooling(std::string_view name);

/// How frames are reduced to one vector. Attentional pooling is single-head:
/// the query is the average-pooled frame, keys and values are linear maps of
/// the frames, and weights are softmax(q . k_t / sqrt(D)).
struct PoolingMethod {
  PoolingKind kind = PoolingKind::kAverage;
  Eigen::MatrixXd key_projection;    // D x D, attentional only
  Eigen::MatrixXd value_projection;  // D x D, attentional only

  static PoolingMethod average() { return {PoolingKind::kAverage, {}, {}}; }
  static PoolingMethod maximum() { return {PoolingKind::kMaximum, {}, {}}; }
  static PoolingMethod attentional(Eigen::MatrixXd key, Eigen::MatrixXd value) {
    return {PoolingKind::kAttentional, std::move(key), std::move(value)};
  }
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Fully-connected stack: Swish between layers, a single logit at the end.
struct ScorerHead {
  std::vector<DenseLayer> layers;

  std::size_t depth() const noexcept { return layers.size(); }
  Eigen::Index input_dim() const;
  /// Error(kDimensionMismatch) unless layers chain and end in one output.
  void validate() const;
};

struct Scorer {
  PoolingMethod pooling;
  ScorerHead head;
};

double sigmoid(double x);
/// x * sigmoid(x)
double swish(double x);
double swish_derivative(double x);

/// Error(kDimensionMismatch) when attentional projections do not match D.
Eigen::VectorXd pool(const EmbeddingFrames& frames, const PoolingMethod& method);

/// Pre-sigmoid output of the head on the pooled frames.
double logit(const EmbeddingFrames& frames, const PoolingMethod& method,
             const ScorerHead& head);

/// Dialect score in (0, 1); 1 means AAE.
double score(const EmbeddingFrames& frames, const PoolingMethod& method,
             const ScorerHead& head);

inline double score(const EmbeddingFrames& frames, const Scorer& scorer) {
  return score(frames, scorer.pooling, scorer.head);
}

struct LabeledFrames {
  EmbeddingFrames frames;
  bool positive;
};

struct TrainOptions {
  PoolingKind pooling = PoolingKind::kAverage;
  std::size_t depth = 2;         // 1..3
  std::size_t hidden_width = 0;  // 0 means the input dimension
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  std::uint64_t seed = 0;
};

/// Seeded initialization: weights and biases uniform in
/// (-1/sqrt(fan_in), 1/sqrt(fan_in)); attention projections start at identity.
Scorer init_scorer(Eigen::Index input_dim, const TrainOptions& options);

/// Trainable parameters in a fixed order: key projection, value projection
/// (attentional only, row-major), then each layer's weight (row-major) and bias.
std::vector<double> flatten_parameters(const Scorer& scorer);
void assign_parameters(Scorer& scorer, std::span<const double> params);

/// Mean binary cross-entropy over `data`. When `gradient` is non-null it
/// receives d(loss)/d(params) in `flatten_parameters` order.
double loss_and_gradient(const Scorer& scorer, std::span<const LabeledFrames> data,
                         std::vector<double>* gradient);

struct TrainResult {
  Scorer scorer;
  // loss_history[e] is the loss after e updates; size epochs + 1.
  std::vector<double> loss_history;
};

/// Full-batch gradient descent on binary cross-entropy.
/// Errors: kEmptyInput, kSingleClassDataset, kDimensionMismatch,
/// kInvalidArgument (bad options), kNonFiniteLoss (divergence).
TrainResult train_head(std::span<const LabeledFrames> data, const TrainOptions& options);

/// Fraction of examples where (score >= threshold) equals the label.
double accuracy(const Scorer& scorer, std::span<const LabeledFrames> data,
                double threshold = 0.5);

/// Versioned flat text format: a header, then each matrix as its
/// dimensions followed by row-major values.
void write_scorer(std::ostream& out, const Scorer& scorer);
Scorer read_scorer(std::istream& in);

/// Frame files: "fairasr-frames 1", then "T D", then T rows of D values.
void write_frames(std::ostream& out, const EmbeddingFrames& frames);
EmbeddingFrames read_frames(std::istream& in);

}  // namespace fairasr
