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

#include "fairasr/dialect_scorer.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "fairasr/error.hpp"
#include "fairasr/random.hpp"

namespace fairasr {
namespace {

constexpr const char* kScorerMagic = "fairasr-scorer";
constexpr const char* kFramesMagic = "fairasr-frames";
constexpr int kFormatVersion = 1;

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void check_attention_dims(const PoolingMethod& method, Eigen::Index d) {
  const auto& k = method.key_projection;
  const auto& v = method.value_projection;
  if (k.rows() != d || k.cols() != d || v.rows() != d || v.cols() != d) {
    throw Error(ErrorKind::kDimensionMismatch,
                "attention projections must be " + std::to_string(d) + "x" +
                    std::to_string(d));
  }
}

// Intermediate values of one forward pass, kept for backpropagation.
struct Forward {
  Eigen::VectorXd pooled;
  Eigen::VectorXd query;      // attentional only
  Eigen::VectorXd weights;    // attention weights over frames
  Eigen::MatrixXd values;     // T x D, attentional only
  std::vector<Eigen::VectorXd> pre;   // pre-activation per layer
  std::vector<Eigen::VectorXd> post;  // input to each layer; post[0] = pooled
  double logit = 0.0;
};

Forward forward(const EmbeddingFrames& frames, const PoolingMethod& method,
                const ScorerHead& head) {
  head.validate();
  if (head.input_dim() != frames.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "frames have dimension " + std::to_string(frames.dim()) +
                    " but the head expects " + std::to_string(head.input_dim()));
  }
  Forward f;
  const Eigen::MatrixXd& x = frames.matrix();
  switch (method.kind) {
    case PoolingKind::kAverage:
      f.pooled = x.colwise().mean().transpose();
      break;
    case PoolingKind::kMaximum:
      f.pooled = x.colwise().maxCoeff().transpose();
      break;
    case PoolingKind::kAttentional: {
      check_attention_dims(method, frames.dim());
      f.query = x.colwise().mean().transpose();
      const Eigen::MatrixXd keys = x * method.key_projection.transpose();
      f.values = x * method.value_projection.transpose();
      Eigen::VectorXd s = keys * f.query / std::sqrt(static_cast<double>(frames.dim()));
      s.array() -= s.maxCoeff();
      f.weights = s.array().exp().matrix();
      f.weights /= f.weights.sum();
      f.pooled = f.values.transpose() * f.weights;
      break;
    }
  }

  Eigen::VectorXd h = f.pooled;
  const std::size_t depth = head.layers.size();
  for (std::size_t l = 0; l < depth; ++l) {
    const auto& layer = head.layers[l];
    f.post.push_back(h);
    Eigen::VectorXd z = layer.weight * h + layer.bias;
    f.pre.push_back(z);
    if (l + 1 < depth) h = z.unaryExpr([](double v) { return swish(v); });
    else f.logit = z(0);
  }
  return f;
}

void append(std::vector<double>& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
}

void add_into(std::vector<double>& out, std::size_t& pos, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[pos++] += m(r, c);
}

std::size_t read_into(std::span<const double> params, std::size_t pos, Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = params[pos++];
  return pos;
}

std::size_t read_into(std::span<const double> params, std::size_t pos, Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = params[pos++];
  return pos;
}

std::size_t parameter_count(const Scorer& scorer) {
  std::size_t n = 0;
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    n += static_cast<std::size_t>(scorer.pooling.key_projection.size() +
                                  scorer.pooling.value_projection.size());
  }
  for (const auto& layer : scorer.head.layers) {
    n += static_cast<std::size_t>(layer.weight.size() + layer.bias.size());
  }
  return n;
}

void write_matrix(std::ostream& out, const char* tag, const Eigen::MatrixXd& m) {
  out << tag << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

[[noreturn]] void bad_format(const std::string& what) {
  throw Error(ErrorKind::kParseError, what);
}

void expect_word(std::istream& in, const std::string& word) {
  std::string got;
  if (!(in >> got) || got != word) {
    bad_format("expected '" + word + "' but found '" + got + "'");
  }
}

Eigen::MatrixXd read_matrix(std::istream& in, const char* tag) {
  expect_word(in, tag);
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    bad_format(std::string("bad dimensions for ") + tag);
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::string token;
      if (!(in >> token)) bad_format(std::string("truncated values for ") + tag);
      try {
        std::size_t used = 0;
        m(r, c) = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        bad_format("not a number: '" + token + "'");
      }
    }
  }
  return m;
}

}  // namespace

EmbeddingFrames::EmbeddingFrames(Eigen::MatrixXd frames) : frames_(std::move(frames)) {
  if (frames_.rows() < 1 || frames_.cols() < 1) {
    throw Error(ErrorKind::kDimensionMismatch, "embedding frames need T >= 1 and D >= 1");
  }
  if (!frames_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "embedding frames contain non-finite values");
  }
}

std::string_view to_string(PoolingKind kind) {
  switch (kind) {
    case PoolingKind::kAverage: return "average";
    case PoolingKind::kMaximum: return "maximum";
    case PoolingKind::kAttentional: return "attentional";
  }
  return "unknown";
}

PoolingKind parse_pooling(std::string_view name) {
  if (name == "average") return PoolingKind::kAverage;
  if (name == "maximum") return PoolingKind::kMaximum;
  if (name == "attentional") return PoolingKind::kAttentional;
  throw Error(ErrorKind::kInvalidArgument, "unknown pooling method '" + std::string(name) + "'");
}

Eigen::Index ScorerHead::input_dim() const {
  if (layers.empty()) return 0;
  return layers.front().weight.cols();
}

void ScorerHead::validate() const {
  if (layers.empty()) throw Error(ErrorKind::kDimensionMismatch, "head has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.bias.size() != layer.weight.rows()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "layer " + std::to_string(l) + " bias does not match its weight rows");
    }
    if (l > 0 && layer.weight.cols() != layers[l - 1].weight.rows()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "layer " + std::to_string(l) + " input does not chain");
    }
  }
  if (layers.back().weight.rows() != 1) {
    throw Error(ErrorKind::kDimensionMismatch, "last layer must have one output");
  }
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double swish(double x) { return x * sigmoid(x); }

double swish_derivative(double x) {
  const double s = sigmoid(x);
  return s + x * s * (1.0 - s);
}

Eigen::VectorXd pool(const EmbeddingFrames& frames, const PoolingMethod& method) {
  const Eigen::MatrixXd& x = frames.matrix();
  switch (method.kind) {
    case PoolingKind::kAverage: return x.colwise().mean().transpose();
    case PoolingKind::kMaximum: return x.colwise().maxCoeff().transpose();
    case PoolingKind::kAttentional: {
      check_attention_dims(method, frames.dim());
      const Eigen::VectorXd q = x.colwise().mean().transpose();
      Eigen::VectorXd s = (x * method.key_projection.transpose()) * q /
                          std::sqrt(static_cast<double>(frames.dim()));
      s.array() -= s.maxCoeff();
      Eigen::VectorXd w = s.array().exp().matrix();
      w /= w.sum();
      return (x * method.value_projection.transpose()).transpose() * w;
    }
  }
  return {};
}

double logit(const EmbeddingFrames& frames, const PoolingMethod& method,
             const ScorerHead& head) {
  return forward(frames, method, head).logit;
}

double score(const EmbeddingFrames& frames, const PoolingMethod& method,
             const ScorerHead& head) {
  return sigmoid(logit(frames, method, head));
}

Scorer init_scorer(Eigen::Index input_dim, const TrainOptions& options) {
  if (input_dim < 1) throw Error(ErrorKind::kInvalidArgument, "input dimension must be >= 1");
  if (options.depth < 1 || options.depth > 3) {
    throw Error(ErrorKind::kInvalidArgument, "head depth must be 1, 2 or 3");
  }
  const Eigen::Index hidden =
      options.hidden_width == 0 ? input_dim : static_cast<Eigen::Index>(options.hidden_width);

  Rng rng(options.seed);
  Scorer scorer;
  scorer.pooling.kind = options.pooling;
  if (options.pooling == PoolingKind::kAttentional) {
    scorer.pooling.key_projection = Eigen::MatrixXd::Identity(input_dim, input_dim);
    scorer.pooling.value_projection = Eigen::MatrixXd::Identity(input_dim, input_dim);
  }
  Eigen::Index fan_in = input_dim;
  for (std::size_t l = 0; l < options.depth; ++l) {
    const Eigen::Index out = (l + 1 == options.depth) ? 1 : hidden;
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    DenseLayer layer{Eigen::MatrixXd(out, fan_in), Eigen::VectorXd(out)};
    for (Eigen::Index r = 0; r < out; ++r)
      for (Eigen::Index c = 0; c < fan_in; ++c) layer.weight(r, c) = rng.uniform(-bound, bound);
    for (Eigen::Index r = 0; r < out; ++r) layer.bias(r) = rng.uniform(-bound, bound);
    scorer.head.layers.push_back(std::move(layer));
    fan_in = out;
  }
  return scorer;
}

std::vector<double> flatten_parameters(const Scorer& scorer) {
  std::vector<double> out;
  out.reserve(parameter_count(scorer));
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    append(out, scorer.pooling.key_projection);
    append(out, scorer.pooling.value_projection);
  }
  for (const auto& layer : scorer.head.layers) {
    append(out, layer.weight);
    append(out, layer.bias);
  }
  return out;
}

void assign_parameters(Scorer& scorer, std::span<const double> params) {
  if (params.size() != parameter_count(scorer)) {
    throw Error(ErrorKind::kDimensionMismatch, "parameter vector has the wrong length");
  }
  std::size_t pos = 0;
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    pos = read_into(params, pos, scorer.pooling.key_projection);
    pos = read_into(params, pos, scorer.pooling.value_projection);
  }
  for (auto& layer : scorer.head.layers) {
    pos = read_into(params, pos, layer.weight);
    pos = read_into(params, pos, layer.bias);
  }
}

double loss_and_gradient(const Scorer& scorer, std::span<const LabeledFrames> data,
                         std::vector<double>* gradient) {
  if (data.empty()) throw Error(ErrorKind::kEmptyInput, "no training examples");
  const bool attentional = scorer.pooling.kind == PoolingKind::kAttentional;
  const auto& layers = scorer.head.layers;
  if (gradient) gradient->assign(parameter_count(scorer), 0.0);

  double total = 0.0;
  for (const auto& example : data) {
    const Forward f = forward(example.frames, scorer.pooling, scorer.head);
    const double y = example.positive ? 1.0 : 0.0;
    total += softplus(f.logit) - y * f.logit;
    if (!gradient) continue;

    // Backward through the head, collecting per-layer grads in reverse.
    std::vector<Eigen::MatrixXd> grad_w(layers.size());
    std::vector<Eigen::VectorXd> grad_b(layers.size());
    Eigen::VectorXd g = Eigen::VectorXd::Constant(1, sigmoid(f.logit) - y);
    for (std::size_t l = layers.size(); l-- > 0;) {
      grad_w[l] = g * f.post[l].transpose();
      grad_b[l] = g;
      g = layers[l].weight.transpose() * g;
      if (l > 0) g.array() *= f.pre[l - 1].unaryExpr([](double v) { return swish_derivative(v); }).array();
    }

    std::size_t pos = 0;
    if (attentional) {
      const Eigen::MatrixXd& x = example.frames.matrix();
      const double scale = 1.0 / std::sqrt(static_cast<double>(example.frames.dim()));
      const Eigen::VectorXd d_weights = f.values * g;
      const Eigen::VectorXd d_scores =
          f.weights.cwiseProduct(d_weights.array().matrix() -
                                 Eigen::VectorXd::Constant(d_weights.size(), f.weights.dot(d_weights)));
      const Eigen::MatrixXd grad_key = (scale * f.query) * (x.transpose() * d_scores).transpose();
      const Eigen::MatrixXd grad_value = g * (x.transpose() * f.weights).transpose();
      add_into(*gradient, pos, grad_key);
      add_into(*gradient, pos, grad_value);
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      add_into(*gradient, pos, grad_w[l]);
      add_into(*gradient, pos, grad_b[l]);
    }
  }

  const double n = static_cast<double>(data.size());
  if (gradient) {
    for (double& v : *gradient) v /= n;
  }
  return total / n;
}

TrainResult train_head(std::span<const LabeledFrames> data, const TrainOptions& options) {
  if (data.empty()) throw Error(ErrorKind::kEmptyInput, "no training examples");
  bool any_pos = false;
  bool any_neg = false;
  const Eigen::Index dim = data.front().frames.dim();
  for (const auto& ex : data) {
    (ex.positive ? any_pos : any_neg) = true;
    if (ex.frames.dim() != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "training examples differ in frame dimension");
    }
  }
  if (!any_pos || !any_neg) {
    throw Error(ErrorKind::kSingleClassDataset, "training data must contain both classes");
  }
  if (!(options.learning_rate > 0.0) || !std::isfinite(options.learning_rate)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be positive and finite");
  }

  TrainResult result{init_scorer(dim, options), {}};
  result.loss_history.reserve(options.epochs + 1);
  std::vector<double> params = flatten_parameters(result.scorer);
  std::vector<double> grad;
  for (std::size_t epoch = 0;; ++epoch) {
    const bool last = epoch == options.epochs;
    const double loss = loss_and_gradient(result.scorer, data, last ? nullptr : &grad);
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::kNonFiniteLoss,
                  "training diverged at epoch " + std::to_string(epoch));
    }
    result.loss_history.push_back(loss);
    if (last) break;
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= options.learning_rate * grad[i];
    assign_parameters(result.scorer, params);
  }
  return result;
}

double accuracy(const Scorer& scorer, std::span<const LabeledFrames> data, double threshold) {
  if (data.empty()) throw Error(ErrorKind::kEmptyInput, "no examples");
  std::size_t correct = 0;
  for (const auto& ex : data) {
    if ((score(ex.frames, scorer) >= threshold) == ex.positive) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

void write_scorer(std::ostream& out, const Scorer& scorer) {
  scorer.head.validate();
  out << kScorerMagic << ' ' << kFormatVersion << '\n';
  out << "pooling " << to_string(scorer.pooling.kind) << '\n';
  out << "depth " << scorer.head.depth() << '\n';
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    write_matrix(out, "key", scorer.pooling.key_projection);
    write_matrix(out, "value", scorer.pooling.value_projection);
  }
  for (const auto& layer : scorer.head.layers) {
    write_matrix(out, "weight", layer.weight);
    write_matrix(out, "bias", layer.bias.transpose());
  }
}

Scorer read_scorer(std::istream& in) {
  expect_word(in, kScorerMagic);
  int version = 0;
  if (!(in >> version) || version != kFormatVersion) {
    bad_format("unsupported scorer format version");
  }
  Scorer scorer;
  expect_word(in, "pooling");
  std::string pooling;
  in >> pooling;
  scorer.pooling.kind = parse_pooling(pooling);
  expect_word(in, "depth");
  std::size_t depth = 0;
  if (!(in >> depth) || depth < 1 || depth > 3) bad_format("depth must be 1, 2 or 3");
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    scorer.pooling.key_projection = read_matrix(in, "key");
    scorer.pooling.value_projection = read_matrix(in, "value");
  }
  for (std::size_t l = 0; l < depth; ++l) {
    DenseLayer layer;
    layer.weight = read_matrix(in, "weight");
    const Eigen::MatrixXd bias = read_matrix(in, "bias");
    if (bias.rows() != 1) bad_format("bias must be a single row");
    layer.bias = bias.row(0).transpose();
    scorer.head.layers.push_back(std::move(layer));
  }
  scorer.head.validate();
  if (scorer.pooling.kind == PoolingKind::kAttentional) {
    check_attention_dims(scorer.pooling, scorer.head.input_dim());
  }
  return scorer;
}

void write_frames(std::ostream& out, const EmbeddingFrames& frames) {
  out << kFramesMagic << ' ' << kFormatVersion << '\n';
  const auto& m = frames.matrix();
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

EmbeddingFrames read_frames(std::istream& in) {
  expect_word(in, kFramesMagic);
  int version = 0;
  if (!(in >> version) || version != kFormatVersion) {
    bad_format("unsupported frames format version");
  }
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) bad_format("bad frame dimensions");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(in >> m(r, c))) bad_format("truncated frame values");
    }
  }
  return EmbeddingFrames(std::move(m));
}

}  // namespace fairasr
