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

#include <cstdio>
#include <memory>
#include <sstream>

#include "fairasr/atomic_file.hpp"
#include "fairasr/dialect_scorer.hpp"
#include "fairasr/error.hpp"
#include "fairasr/fairness_metrics.hpp"
#include "fairasr/manifest.hpp"
#include "fairasr/report.hpp"
#include "commands.hpp"

namespace fairasr::cli {
namespace {

struct ScoreOptions {
  std::string manifest;
  std::string head;
  std::string out;
};

void run_score(Io io, const ScoreOptions& o) {
  const Corpus corpus = load_records(o.manifest);
  std::istringstream head_in(read_file(o.head));
  const Scorer scorer = read_scorer(head_in);
  const auto base = parent_dir(o.manifest);
  ScoreTable scores;
  scores.reserve(corpus.size());
  for (const auto& rec : corpus) scores.emplace_back(rec.id, score(load_embedding(rec, base), scorer));
  std::ostringstream out;
  write_scores(out, scores);
  emit_file(io, o.out, out.str());
}

struct TrainOptionsCli {
  std::string manifest;
  std::string gold;
  std::string pooling = "average";
  std::size_t depth = 2;
  std::size_t hidden = 0;
  double lr = 0.1;
  std::size_t epochs = 500;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_train(Io io, const TrainOptionsCli& o) {
  const Corpus corpus = load_records(o.manifest);
  const GoldTable gold = load_gold(o.gold);
  const auto base = parent_dir(o.manifest);
  std::vector<LabeledFrames> data;
  for (const auto& rec : corpus) {
    auto it = gold.find(rec.id);
    if (it == gold.end()) continue;
    data.push_back({load_embedding(rec, base), it->second});
  }

  TrainOptions opts;
  opts.pooling = parse_pooling(o.pooling);
  opts.depth = o.depth;
  opts.hidden_width = o.hidden;
  opts.learning_rate = o.lr;
  opts.epochs = o.epochs;
  opts.seed = o.seed.value_or(default_seed());
  const TrainResult result = train_head(data, opts);

  std::ostringstream head;
  write_scorer(head, result.scorer);
  write_file_atomic(o.out, head.str());
  char line[160];
  std::snprintf(line, sizeof line,
                "trained %s depth-%zu head on %zu utterances (seed %llu): loss %.6f -> %.6f, "
                "accuracy %.4f\n",
                o.pooling.c_str(), opts.depth, data.size(),
                static_cast<unsigned long long>(opts.seed), result.loss_history.front(),
                result.loss_history.back(), accuracy(result.scorer, data));
  io.out << line;
}

struct SweepOptions {
  std::string scores;
  std::string gold;
  std::string grid = "0:1:0.05";
  std::string out;
};

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3) {
    throw Error(ErrorKind::kInvalidArgument, "grid must be lo:hi:step, got '" + spec + "'");
  }
  return threshold_grid(lo, hi, step);
}

void run_sweep(Io io, const SweepOptions& o) {
  const ScoreTable scores = load_scores(o.scores);
  const GoldTable gold = load_gold(o.gold);
  std::vector<ScoredLabel> labeled;
  labeled.reserve(scores.size());
  for (const auto& [id, s] : scores) {
    auto it = gold.find(id);
    if (it == gold.end()) throw Error(ErrorKind::kInvalidArgument, "no gold label for '" + id + "'");
    labeled.push_back({s, it->second});
  }
  const auto thresholds = parse_grid(o.grid);
  const auto points = pr_sweep(labeled, thresholds);
  const ConfigEcho echo{{"scores", o.scores}, {"gold", o.gold}, {"grid", o.grid}};
  emit_report(io, o.out, render_sweep_text(points, echo), render_sweep_json(points, echo));
}

}  // namespace

void add_scorer_commands(CLI::App& app, Io io, Registry& registry) {
  {
    auto o = std::make_shared<ScoreOptions>();
    auto* sub = app.add_subcommand("score", "Dialect scores for every utterance in a manifest");
    sub->add_option("--manifest", o->manifest, "Manifest with embedding references")->required();
    sub->add_option("--head", o->head, "Trained scorer file")->required();
    sub->add_option("--out", o->out, "Score TSV (stdout if omitted)");
    registry.emplace_back(sub, [io, o] { run_score(io, *o); });
  }
  {
    auto o = std::make_shared<TrainOptionsCli>();
    auto* sub = app.add_subcommand("train-head", "Train the pooling and classifier head");
    sub->add_option("--manifest", o->manifest, "Manifest with embedding references")->required();
    sub->add_option("--gold", o->gold, "Gold labels TSV")->required();
    sub->add_option("--pooling", o->pooling, "average, maximum or attentional")
        ->check(CLI::IsMember({"average", "maximum", "attentional"}))
        ->capture_default_str();
    sub->add_option("--depth", o->depth, "Number of dense layers")->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--hidden", o->hidden, "Hidden width (0 = input dim)")->capture_default_str();
    sub->add_option("--lr", o->lr, "Learning rate")->capture_default_str();
    sub->add_option("--epochs", o->epochs, "Full-batch gradient steps")->capture_default_str();
    sub->add_option("--seed", o->seed, "Initialization seed (default $FAIRASR_SEED or 0)");
    sub->add_option("--out", o->out, "Output scorer file")->required();
    registry.emplace_back(sub, [io, o] { run_train(io, *o); });
  }
  {
    auto o = std::make_shared<SweepOptions>();
    auto* sub = app.add_subcommand("sweep-threshold", "Precision and recall over a threshold grid");
    sub->add_option("--scores", o->scores, "Score TSV")->required();
    sub->add_option("--gold", o->gold, "Gold labels TSV")->required();
    sub->add_option("--grid", o->grid, "lo:hi:step")->capture_default_str();
    sub->add_option("--out", o->out, "Write PREFIX.txt and PREFIX.json");
    registry.emplace_back(sub, [io, o] { run_sweep(io, *o); });
  }
}

}  // namespace fairasr::cli
