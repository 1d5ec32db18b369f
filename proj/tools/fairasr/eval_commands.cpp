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

#include <filesystem>
#include <memory>

#include "fairasr/atomic_file.hpp"
#include "fairasr/error.hpp"
#include "fairasr/matched_ngram.hpp"
#include "fairasr/report.hpp"
#include "commands.hpp"

namespace fairasr::cli {
namespace {

std::string corpus_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct WerOptions {
  std::string manifest;
  std::string system;
  std::string out;
};

void run_eval_wer(Io io, const WerOptions& o) {
  const Corpus corpus = load_records(o.manifest);
  const CorpusScore s = score_corpus(corpus, corpus_name(o.manifest), o.system);
  const ConfigEcho config{{"manifest", o.manifest}, {"system", o.system}};
  emit_report(io, o.out, render_wer_text(s, o.system, config), render_wer_json(s, o.system, config));
}

struct DisparityOptions {
  std::string aae;
  std::string mae;
  std::string system;
  std::string baseline_system;
  std::string baseline_report;
  std::vector<std::size_t> orders{kDefaultOrders.begin(), kDefaultOrders.end()};
  std::string out;
};

ConfigEcho disparity_echo(const DisparityOptions& o) {
  ConfigEcho config{{"aae", o.aae}, {"mae", o.mae}, {"system", o.system}};
  if (!o.baseline_system.empty()) config.emplace_back("baseline_system", o.baseline_system);
  if (!o.baseline_report.empty()) config.emplace_back("baseline_report", o.baseline_report);
  return config;
}

std::optional<std::string> optional_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

void run_eval_disparity(Io io, const DisparityOptions& o) {
  const Corpus aae = load_records(o.aae);
  const Corpus mae = load_records(o.mae);
  EvalReport report = evaluate_disparity(aae, mae, corpus_name(o.aae), corpus_name(o.mae),
                                         o.system, optional_string(o.baseline_system));
  if (!o.baseline_report.empty()) {
    const double old_dis = read_report_disparity(read_file(o.baseline_report));
    report.baseline = o.baseline_report;
    report.reduction = disparity_reduction(old_dis, report.disparity.disparity);
  }
  report.config = disparity_echo(o);
  emit_report(io, o.out, render_text(report), render_json(report));
}

void run_eval_matched(Io io, const DisparityOptions& o) {
  const Corpus aae = load_records(o.aae);
  const Corpus mae = load_records(o.mae);
  const OrderSet orders(o.orders.begin(), o.orders.end());
  const auto baseline = optional_string(o.baseline_system);
  EvalReport report = evaluate_disparity(aae, mae, corpus_name(o.aae), corpus_name(o.mae),
                                         o.system, baseline);
  report.orders = orders;
  report.matched = matched_ngram_report(aae, mae, o.system, orders, baseline);
  if (!o.baseline_report.empty()) {
    const double old_dis = read_report_disparity(read_file(o.baseline_report));
    report.baseline = o.baseline_report;
    report.matched->reduction = disparity_reduction(old_dis, report.matched->disparity.disparity);
  }
  ConfigEcho config = disparity_echo(o);
  std::string joined;
  for (std::size_t n : orders) joined += (joined.empty() ? "" : ",") + std::to_string(n);
  config.emplace_back("orders", joined);
  report.config = std::move(config);
  emit_report(io, o.out, render_text(report), render_json(report));
}

void add_pair_options(CLI::App* sub, DisparityOptions& o) {
  sub->add_option("--aae", o.aae, "AAE manifest")->required();
  sub->add_option("--mae", o.mae, "MAE manifest")->required();
  sub->add_option("--system", o.system, "Hypothesis system to score")->required();
  auto* by_system = sub->add_option("--baseline-system", o.baseline_system,
                                    "Baseline system on the same corpora");
  sub->add_option("--baseline-report", o.baseline_report, "Baseline report JSON")
      ->excludes(by_system);
  sub->add_option("--out", o.out, "Write PREFIX.txt and PREFIX.json");
}

}  // namespace

void add_eval_commands(CLI::App& app, Io io, Registry& registry) {
  {
    auto o = std::make_shared<WerOptions>();
    auto* sub = app.add_subcommand("eval-wer", "Corpus WER of one system");
    sub->add_option("--manifest", o->manifest, "Utterance manifest")->required();
    sub->add_option("--system", o->system, "Hypothesis system to score")->required();
    sub->add_option("--out", o->out, "Write PREFIX.txt and PREFIX.json");
    registry.emplace_back(sub, [io, o] { run_eval_wer(io, *o); });
  }
  {
    auto o = std::make_shared<DisparityOptions>();
    auto* sub = app.add_subcommand("eval-disparity", "WER disparity between AAE and MAE corpora");
    add_pair_options(sub, *o);
    registry.emplace_back(sub, [io, o] { run_eval_disparity(io, *o); });
  }
  {
    auto o = std::make_shared<DisparityOptions>();
    auto* sub = app.add_subcommand("eval-matched-ngram",
                                   "Disparity restricted to n-grams common to both corpora");
    add_pair_options(sub, *o);
    sub->add_option("--orders", o->orders, "N-gram orders")->delimiter(',')->check(CLI::PositiveNumber);
    registry.emplace_back(sub, [io, o] { run_eval_matched(io, *o); });
  }
}

}  // namespace fairasr::cli
