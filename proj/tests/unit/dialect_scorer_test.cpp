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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fairasr/dialect_scorer.hpp"
#include "fairasr/error.hpp"
#include "scorer_support.hpp"

namespace fairasr {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

EmbeddingFrames frames(std::initializer_list<std::initializer_list<double>> rows) {
  MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return EmbeddingFrames(m);
}

PoolingMethod identity_attention(Eigen::Index d) {
  return PoolingMethod::attentional(MatrixXd::Identity(d, d), MatrixXd::Identity(d, d));
}

std::vector<PoolingMethod> all_methods(Eigen::Index d) {
  return {PoolingMethod::average(), PoolingMethod::maximum(), identity_attention(d)};
}

TEST(EmbeddingFrames, Validates) {
  EXPECT_THROW(EmbeddingFrames(MatrixXd(0, 2)), Error);
  EXPECT_THROW(EmbeddingFrames(MatrixXd(2, 0)), Error);
  MatrixXd bad = MatrixXd::Zero(1, 1);
  bad(0, 0) = NAN;
  EXPECT_THROW(EmbeddingFrames{bad}, Error);
}

TEST(Pool, IdenticalFramesCollapse) {
  const auto f = frames({{0.3, -1.2, 2.0}, {0.3, -1.2, 2.0}, {0.3, -1.2, 2.0}});
  for (const auto& m : all_methods(3)) {
    EXPECT_TRUE(pool(f, m).isApprox(VectorXd{{0.3, -1.2, 2.0}}, 1e-12));
  }
}

TEST(Pool, AverageAndMaximum) {
  const auto f = frames({{1, 0}, {0, 1}});
  EXPECT_TRUE(pool(f, PoolingMethod::average()).isApprox(VectorXd{{0.5, 0.5}}));
  EXPECT_TRUE(pool(f, PoolingMethod::maximum()).isApprox(VectorXd{{1, 1}}));
}

TEST(Pool, SingleFrameAttention) {
  Rng rng(41);
  const auto f = EmbeddingFrames(gen::random_matrix(rng, 1, 4));
  EXPECT_TRUE(pool(f, identity_attention(4)).isApprox(f.matrix().row(0).transpose()));
}

TEST(Pool, AttentionMatchesHandComputation) {
  const auto f = frames({{1, 0}, {0, 2}});
  MatrixXd k{{1, 0}, {0, 1}};
  MatrixXd v{{2, 0}, {0, 1}};
  // q = (0.5, 1); k_1 = (1, 0), k_2 = (0, 2); logits 0.5/sqrt2, 2/sqrt2.
  const double a1 = std::exp(0.5 / std::sqrt(2.0)), a2 = std::exp(2.0 / std::sqrt(2.0));
  const double w1 = a1 / (a1 + a2), w2 = a2 / (a1 + a2);
  const VectorXd expected{{w1 * 2.0, w2 * 2.0}};
  EXPECT_TRUE(pool(f, PoolingMethod::attentional(k, v)).isApprox(expected, 1e-12));
  EXPECT_THROW(pool(f, PoolingMethod::attentional(MatrixXd::Identity(3, 3), v)), Error);
}

TEST(Pool, PermutationAndDuplicationInvariant) {
  Rng rng(42);
  for (int it = 0; it < 50; ++it) {
    const MatrixXd x = gen::random_matrix(rng, 5, 3);
    const auto methods = std::vector<PoolingMethod>{
        PoolingMethod::average(), PoolingMethod::maximum(),
        PoolingMethod::attentional(gen::random_matrix(rng, 3, 3), gen::random_matrix(rng, 3, 3))};
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
    perm.setIdentity();
    rng.shuffle(perm.indices().data(), perm.indices().data() + 5);
    MatrixXd doubled(10, 3);
    doubled << x, x;
    for (const auto& m : methods) {
      const VectorXd base = pool(EmbeddingFrames(x), m);
      EXPECT_TRUE(pool(EmbeddingFrames(perm * x), m).isApprox(base, 1e-10));
      EXPECT_TRUE(pool(EmbeddingFrames(doubled), m).isApprox(base, 1e-10));
    }
  }
}

TEST(Swish, Values) {
  EXPECT_EQ(swish(0.0), 0.0);
  EXPECT_NEAR(swish(1.0), 0.7310585786300049, 1e-15);
  EXPECT_NEAR(swish(50.0), 50.0, 1e-12);
  EXPECT_NEAR(swish(-50.0), 0.0, 1e-12);
  for (double x : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
    EXPECT_NEAR(swish_derivative(x), (swish(x + 1e-6) - swish(x - 1e-6)) / 2e-6, 1e-8);
  }
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_EQ(sigmoid(800.0), 1.0);
}

TEST(Score, ZeroHeadIsHalf) {
  ScorerHead head{{DenseLayer{MatrixXd::Zero(2, 2), VectorXd::Zero(2)},
                   DenseLayer{MatrixXd::Zero(1, 2), VectorXd::Zero(1)}}};
  const auto f = frames({{1, 2}, {3, 4}});
  for (const auto& m : all_methods(2)) EXPECT_EQ(score(f, m, head), 0.5);
}

TEST(Score, OneLayerClosedForm) {
  ScorerHead head{{DenseLayer{MatrixXd{{0.5, -2.0}}, VectorXd{{0.25}}}}};
  const auto f = frames({{1, 3}, {1, 3}});
  EXPECT_NEAR(score(f, PoolingMethod::average(), head), 1.0 / (1.0 + std::exp(-(0.5 - 6.0 + 0.25))), 1e-15);
}

TEST(Score, FixtureMatchesPlainLoopEvaluation) {
  // Independent forward pass with scalar loops for a depth-2 attentional head.
  const double x[3][2] = {{0.2, -0.4}, {1.0, 0.5}, {-0.3, 0.8}};
  const double k[2][2] = {{0.9, 0.1}, {-0.2, 1.1}};
  const double v[2][2] = {{1.0, 0.3}, {0.0, 0.7}};
  const double w1[2][2] = {{0.4, -0.6}, {0.25, 0.5}};
  const double b1[2] = {0.1, -0.2};
  const double w2[2] = {1.5, -0.8};
  const double b2 = 0.05;

  double q[2] = {0, 0};
  for (auto& row : x) {
    q[0] += row[0] / 3;
    q[1] += row[1] / 3;
  }
  double logits[3], vals[3][2], total = 0;
  for (int t = 0; t < 3; ++t) {
    double kt[2];
    for (int i = 0; i < 2; ++i) {
      kt[i] = k[i][0] * x[t][0] + k[i][1] * x[t][1];
      vals[t][i] = v[i][0] * x[t][0] + v[i][1] * x[t][1];
    }
    logits[t] = std::exp((kt[0] * q[0] + kt[1] * q[1]) / std::sqrt(2.0));
    total += logits[t];
  }
  double pooled[2] = {0, 0};
  for (int t = 0; t < 3; ++t) {
    pooled[0] += logits[t] / total * vals[t][0];
    pooled[1] += logits[t] / total * vals[t][1];
  }
  double out = b2;
  for (int i = 0; i < 2; ++i) {
    const double z = w1[i][0] * pooled[0] + w1[i][1] * pooled[1] + b1[i];
    out += w2[i] * z / (1 + std::exp(-z));
  }
  const double expected = 1 / (1 + std::exp(-out));

  MatrixXd xm(3, 2), km(2, 2), vm(2, 2), w1m(2, 2);
  for (int r = 0; r < 3; ++r) xm.row(r) << x[r][0], x[r][1];
  km << k[0][0], k[0][1], k[1][0], k[1][1];
  vm << v[0][0], v[0][1], v[1][0], v[1][1];
  w1m << w1[0][0], w1[0][1], w1[1][0], w1[1][1];
  ScorerHead head{{DenseLayer{w1m, VectorXd{{b1[0], b1[1]}}},
                   DenseLayer{MatrixXd{{w2[0], w2[1]}}, VectorXd{{b2}}}}};
  EXPECT_NEAR(score(EmbeddingFrames(xm), PoolingMethod::attentional(km, vm), head), expected, 1e-14);
}

TEST(ScorerHead, ValidatesShapes) {
  ScorerHead bad{{DenseLayer{MatrixXd::Zero(2, 3), VectorXd::Zero(2)},
                  DenseLayer{MatrixXd::Zero(1, 3), VectorXd::Zero(1)}}};
  EXPECT_THROW(bad.validate(), Error);
  ScorerHead two_out{{DenseLayer{MatrixXd::Zero(2, 3), VectorXd::Zero(2)}}};
  EXPECT_THROW(two_out.validate(), Error);
  ScorerHead ok{{DenseLayer{MatrixXd::Zero(1, 3), VectorXd::Zero(1)}}};
  EXPECT_NO_THROW(ok.validate());
  EXPECT_THROW(score(frames({{1, 2}}), PoolingMethod::average(), ok), Error);
}

TEST(Parameters, FlattenAssignRoundTrip) {
  TrainOptions o;
  o.pooling = PoolingKind::kAttentional;
  o.depth = 3;
  o.hidden_width = 4;
  Scorer s = init_scorer(3, o);
  auto p = flatten_parameters(s);
  EXPECT_EQ(p.size(), 9u + 9u + (4 * 3 + 4) + (4 * 4 + 4) + (4 + 1));
  for (auto& v : p) v += 1.0;
  assign_parameters(s, p);
  EXPECT_EQ(flatten_parameters(s), p);
  p.pop_back();
  EXPECT_THROW(assign_parameters(s, p), Error);
}

TEST(Init, SeededAndBounded) {
  TrainOptions o;
  o.depth = 2;
  o.seed = 9;
  const Scorer a = init_scorer(4, o), b = init_scorer(4, o);
  EXPECT_EQ(flatten_parameters(a), flatten_parameters(b));
  for (const auto& layer : a.head.layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    EXPECT_LE(layer.weight.cwiseAbs().maxCoeff(), bound);
    EXPECT_LE(layer.bias.cwiseAbs().maxCoeff(), bound);
  }
  o.pooling = PoolingKind::kAttentional;
  const Scorer c = init_scorer(4, o);
  EXPECT_TRUE(c.pooling.key_projection.isIdentity());
  EXPECT_TRUE(c.pooling.value_projection.isIdentity());
}

TEST(Gradient, MatchesCentralDifferences) {
  Rng rng(43);
  for (auto kind : {PoolingKind::kAverage, PoolingKind::kMaximum, PoolingKind::kAttentional}) {
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      for (int point = 0; point < 10; ++point) {
        TrainOptions o;
        o.pooling = kind;
        o.depth = depth;
        o.hidden_width = 3;
        Scorer s = init_scorer(3, o);
        auto p = flatten_parameters(s);
        for (auto& v : p) v = rng.uniform(-1.0, 1.0);
        assign_parameters(s, p);
        const auto data = gen::random_dataset(rng, 4, 3, 4);
        EXPECT_LE(oracle::gradient_relative_error(s, data), 1e-4)
            << to_string(kind) << " depth " << depth;
      }
    }
  }
}

TEST(Train, SeparableDataDepthOne) {
  Rng rng(44);
  std::vector<LabeledFrames> data;
  for (int i = 0; i < 40; ++i) {
    const double side = i % 2 == 0 ? 1.0 : -1.0;
    MatrixXd f(2, 2);
    f << side + 0.2 * rng.normal(), rng.normal(), side + 0.2 * rng.normal(), rng.normal();
    data.push_back({EmbeddingFrames(f), side > 0});
  }
  TrainOptions o;
  o.depth = 1;
  o.epochs = 300;
  o.learning_rate = 0.5;
  const auto r = train_head(data, o);
  EXPECT_EQ(accuracy(r.scorer, data), 1.0);
}

TEST(Train, XorNeedsDepthTwo) {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(100 + seed);
    const auto data = gen::xor_dataset(rng, 10);
    TrainOptions deep;
    deep.depth = 2;
    deep.hidden_width = 8;
    deep.learning_rate = 0.5;
    deep.epochs = 2000;
    deep.seed = seed;
    solved += accuracy(train_head(data, deep).scorer, data) == 1.0;
    TrainOptions flat = deep;
    flat.depth = 1;
    EXPECT_LE(accuracy(train_head(data, flat).scorer, data), 0.75);
  }
  EXPECT_GE(solved, 4);
}

TEST(Train, ZeroEpochsKeepsInitialization) {
  Rng rng(45);
  const auto data = gen::random_dataset(rng, 6, 3, 3);
  TrainOptions o;
  o.epochs = 0;
  o.seed = 3;
  const auto r = train_head(data, o);
  EXPECT_EQ(flatten_parameters(r.scorer), flatten_parameters(init_scorer(3, o)));
  EXPECT_EQ(r.loss_history.size(), 1u);
}

TEST(Train, ConvexLossNonIncreasing) {
  Rng rng(46);
  const auto data = gen::random_dataset(rng, 20, 3, 4);
  TrainOptions o;
  o.depth = 1;
  o.learning_rate = 0.05;
  o.epochs = 200;
  const auto r = train_head(data, o);
  for (std::size_t e = 1; e < r.loss_history.size(); ++e) {
    EXPECT_LE(r.loss_history[e], r.loss_history[e - 1] + 1e-15);
  }
}

TEST(Train, Errors) {
  Rng rng(47);
  TrainOptions o;
  auto expect_kind = [&](const std::vector<LabeledFrames>& d, const TrainOptions& opts, ErrorKind k) {
    try {
      train_head(d, opts);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), k);
    }
  };
  expect_kind({}, o, ErrorKind::kEmptyInput);
  std::vector<LabeledFrames> one_class{{EmbeddingFrames(MatrixXd::Ones(1, 2)), true},
                                       {EmbeddingFrames(MatrixXd::Zero(1, 2)), true}};
  expect_kind(one_class, o, ErrorKind::kSingleClassDataset);
  std::vector<LabeledFrames> mixed_dims{{EmbeddingFrames(MatrixXd::Ones(1, 2)), true},
                                        {EmbeddingFrames(MatrixXd::Zero(1, 3)), false}};
  expect_kind(mixed_dims, o, ErrorKind::kDimensionMismatch);
  auto data = gen::random_dataset(rng, 4, 2, 2);
  TrainOptions bad_lr = o;
  bad_lr.learning_rate = -1;
  expect_kind(data, bad_lr, ErrorKind::kInvalidArgument);
  TrainOptions huge = o;
  huge.learning_rate = 1e300;
  huge.epochs = 50;
  expect_kind(data, huge, ErrorKind::kNonFiniteLoss);
}

TEST(ScorerIo, RoundTrip) {
  Rng rng(48);
  TrainOptions o;
  o.pooling = PoolingKind::kAttentional;
  o.depth = 2;
  Scorer s = init_scorer(3, o);
  auto p = flatten_parameters(s);
  for (auto& v : p) v = rng.normal();
  assign_parameters(s, p);
  std::stringstream ss;
  write_scorer(ss, s);
  const Scorer back = read_scorer(ss);
  EXPECT_EQ(back.pooling.kind, PoolingKind::kAttentional);
  EXPECT_EQ(flatten_parameters(back), p);

  std::stringstream garbage("not-a-scorer 1\n");
  EXPECT_THROW(read_scorer(garbage), Error);
}

TEST(FramesIo, RoundTrip) {
  Rng rng(49);
  const EmbeddingFrames f(gen::random_matrix(rng, 4, 3));
  std::stringstream ss;
  write_frames(ss, f);
  EXPECT_EQ(read_frames(ss).matrix(), f.matrix());
}

}  // namespace
}  // namespace fairasr
