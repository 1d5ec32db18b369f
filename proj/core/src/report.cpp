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

#include "fairasr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fairasr/error.hpp"
#include "fairasr/format.hpp"
#include "fairasr/version.hpp"

namespace fairasr {
namespace {

using nlohmann::ordered_json;
using Table = std::vector<std::vector<std::string>>;

std::string render_table(const Table& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
    }
    out += line + '\n';
  }
  return out;
}

std::string header_text(const std::string& command, const ConfigEcho& config) {
  std::string out = std::string("fairasr ") + kVersion + " " + command + "\n";
  for (const auto& [key, value] : config) out += "  " + key + " = " + value + "\n";
  return out + "\n";
}

ordered_json header_json(const std::string& command, const ConfigEcho& config) {
  ordered_json j;
  j["schema"] = "fairasr-report";
  j["version"] = 1;
  j["tool_version"] = kVersion;
  j["command"] = command;
  ordered_json echo = ordered_json::object();
  for (const auto& [key, value] : config) echo[key] = value;
  j["config"] = std::move(echo);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json wer_json(const WerResult& w) {
  ordered_json j;
  j["ref_words"] = w.ref_words;
  j["substitutions"] = w.substitutions;
  j["deletions"] = w.deletions;
  j["insertions"] = w.insertions;
  j["wer"] = w.wer();
  j["wer_percent"] = format_percent(w.wer());
  return j;
}

ordered_json corpus_json(const CorpusScore& s) {
  ordered_json j;
  j["name"] = s.name;
  j["utterances"] = s.utterances;
  j["wer"] = wer_json(s.wer);
  return j;
}

ordered_json disparity_json(const DisparityResult& d) {
  ordered_json j;
  j["wer_aae"] = d.wer_aae;
  j["wer_mae"] = d.wer_mae;
  j["disparity"] = d.disparity;
  j["disparity_percent"] = format_percent(d.disparity);
  return j;
}

ordered_json reduction_json(const DisparityReduction& r) {
  ordered_json j;
  j["dis_old"] = r.dis_old;
  j["dis_new"] = r.dis_new;
  j["reduction"] = r.reduction;
  j["reduction_percent"] = format_percent(r.reduction);
  return j;
}

std::vector<std::string> wer_row(const std::string& name, std::size_t utts, const WerResult& w) {
  return {name,
          std::to_string(utts),
          std::to_string(w.ref_words),
          std::to_string(w.substitutions),
          std::to_string(w.deletions),
          std::to_string(w.insertions),
          format_percent(w.wer())};
}

std::string optional_percent(const std::optional<double>& v) {
  return v ? format_percent(*v) : std::string("n/a");
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string seconds(std::int64_t ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(ms / 1000),
                static_cast<long long>(ms % 1000));
  return buf;
}

}  // namespace

CorpusScore score_corpus(std::span<const UtteranceRecord> corpus, const std::string& name,
                         const std::string& system) {
  if (corpus.empty()) throw Error(ErrorKind::kEmptyCorpus, "corpus '" + name + "' is empty");
  CorpusScore s{name, corpus.size(), {}};
  for (const auto& rec : corpus) {
    if (rec.reference.empty()) {
      throw Error(ErrorKind::kEmptyReference, "utterance '" + rec.id + "' has an empty reference");
    }
    s.wer += wer(rec.reference, rec.hypothesis(system));
  }
  return s;
}

EvalReport evaluate_disparity(std::span<const UtteranceRecord> aae,
                              std::span<const UtteranceRecord> mae, const std::string& aae_name,
                              const std::string& mae_name, const std::string& system,
                              const std::optional<std::string>& baseline_system) {
  EvalReport r;
  r.system = system;
  r.aae = score_corpus(aae, aae_name, system);
  r.mae = score_corpus(mae, mae_name, system);
  r.disparity = disparity_or_zero(r.aae.wer.wer(), r.mae.wer.wer());
  if (baseline_system) {
    const auto base_aae = score_corpus(aae, aae_name, *baseline_system);
    const auto base_mae = score_corpus(mae, mae_name, *baseline_system);
    const auto base = disparity_or_zero(base_aae.wer.wer(), base_mae.wer.wer());
    r.baseline = *baseline_system;
    r.reduction = disparity_reduction(base.disparity, r.disparity.disparity);
  }
  return r;
}

double read_report_disparity(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("matched")) return j.at("matched").at("disparity").at("disparity").get<double>();
    return j.at("disparity").at("disparity").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("baseline report has no disparity: ") + e.what());
  }
}

std::string render_text(const EvalReport& report) {
  const bool matched = report.matched.has_value();
  std::string out = header_text(matched ? "eval-matched-ngram" : "eval-disparity", report.config);
  out += "system: " + report.system + "\n\n";
  Table t{{"corpus", "utts", "words", "sub", "del", "ins", "WER"}};
  t.push_back(wer_row("AAE " + report.aae.name, report.aae.utterances, report.aae.wer));
  t.push_back(wer_row("MAE " + report.mae.name, report.mae.utterances, report.mae.wer));
  out += render_table(t);
  out += "\nMAE/AAE disparity: " + format_percent(report.disparity.disparity) + "\n";
  if (matched) {
    const auto& m = *report.matched;
    out += "\nmatched n-grams (orders";
    for (std::size_t o : report.orders) out += " " + std::to_string(o);
    out += "): " + std::to_string(m.common_ngram_count) + " common, " +
           std::to_string(m.result.unique_ngram_count) + " unique paired, " +
           std::to_string(m.result.pair_count) + " pairs\n";
    Table mt{{"side", "words", "sub", "del", "ins", "WER"}};
    for (const auto& [label, w] : {std::pair{"AAE", m.result.side_a}, std::pair{"MAE", m.result.side_b}}) {
      mt.push_back({label, std::to_string(w.ref_words), std::to_string(w.substitutions),
                    std::to_string(w.deletions), std::to_string(w.insertions),
                    format_percent(w.wer())});
    }
    out += render_table(mt);
    out += "matched MAE/AAE disparity: " + format_percent(m.disparity.disparity) + "\n";
    if (m.reduction) {
      out += "matched disparity reduction vs " + report.baseline.value_or("baseline") + ": " +
             format_percent(m.reduction->reduction) + "\n";
    }
  }
  if (report.reduction) {
    out += "disparity reduction vs " + report.baseline.value_or("baseline") + ": " +
           format_percent(report.reduction->reduction) + "\n";
  }
  return out;
}

std::string render_json(const EvalReport& report) {
  ordered_json j = header_json(report.matched ? "eval-matched-ngram" : "eval-disparity", report.config);
  j["system"] = report.system;
  j["aae"] = corpus_json(report.aae);
  j["mae"] = corpus_json(report.mae);
  j["disparity"] = disparity_json(report.disparity);
  if (report.baseline) j["baseline"] = *report.baseline;
  if (report.reduction) j["reduction"] = reduction_json(*report.reduction);
  if (report.matched) {
    const auto& m = *report.matched;
    ordered_json mj;
    ordered_json orders = ordered_json::array();
    for (std::size_t o : report.orders) orders.push_back(o);
    mj["orders"] = std::move(orders);
    mj["common_ngrams"] = m.common_ngram_count;
    mj["unique_ngrams"] = m.result.unique_ngram_count;
    mj["pairs"] = m.result.pair_count;
    mj["aae"] = wer_json(m.result.side_a);
    mj["mae"] = wer_json(m.result.side_b);
    mj["disparity"] = disparity_json(m.disparity);
    if (m.reduction) mj["reduction"] = reduction_json(*m.reduction);
    j["matched"] = std::move(mj);
  }
  return dump(j);
}

std::string render_wer_text(const CorpusScore& score, const std::string& system,
                            const ConfigEcho& config) {
  std::string out = header_text("eval-wer", config);
  out += "system: " + system + "\n\n";
  Table t{{"corpus", "utts", "words", "sub", "del", "ins", "WER"}};
  t.push_back(wer_row(score.name, score.utterances, score.wer));
  return out + render_table(t);
}

std::string render_wer_json(const CorpusScore& score, const std::string& system,
                            const ConfigEcho& config) {
  ordered_json j = header_json("eval-wer", config);
  j["system"] = system;
  j["corpus"] = corpus_json(score);
  return dump(j);
}

std::string render_selection_text(const SelectionResult& result, const ConfigEcho& config) {
  std::string out = header_text("select-data", config);
  Table t{{"partition", "utts", "share"}};
  t.push_back({"aae", std::to_string(result.aae_ids.size()), format_percent(result.fraction(result.aae_ids.size()))});
  t.push_back({"mae", std::to_string(result.mae_ids.size()), format_percent(result.fraction(result.mae_ids.size()))});
  t.push_back({"excluded", std::to_string(result.excluded_ids.size()),
               format_percent(result.fraction(result.excluded_ids.size()))});
  t.push_back({"total", std::to_string(result.total()), result.total() ? "100.0%" : "0.0%"});
  return out + render_table(t);
}

std::string render_selection_json(const SelectionResult& result, const ConfigEcho& config) {
  ordered_json j = header_json("select-data", config);
  j["total"] = result.total();
  for (const auto& [name, ids] : {std::pair{"aae", &result.aae_ids}, std::pair{"mae", &result.mae_ids},
                                  std::pair{"excluded", &result.excluded_ids}}) {
    ordered_json part;
    part["count"] = ids->size();
    part["fraction"] = result.fraction(ids->size());
    j[name] = std::move(part);
  }
  return dump(j);
}

std::string render_composition_text(const CompositionReport& report, const ConfigEcho& config) {
  std::string out = header_text("report", config);
  Table t{{"region set", "utts", "% total", "AAE", "% total", "% region", "non-AAE", "% total",
           "% region", "excluded"}};
  auto row = [&](const CompositionRow& r) {
    auto of_region = [&](std::size_t c) {
      return r.region_count ? format_percent(static_cast<double>(c) / static_cast<double>(r.region_count))
                            : std::string("n/a");
    };
    t.push_back({r.name, std::to_string(r.region_count), format_percent(report.of_total(r.region_count)),
                 std::to_string(r.aae_count), format_percent(report.of_total(r.aae_count)),
                 of_region(r.aae_count), std::to_string(r.mae_count),
                 format_percent(report.of_total(r.mae_count)), of_region(r.mae_count),
                 std::to_string(r.excluded_count)});
  };
  for (const auto& r : report.rows) row(r);
  row(report.overall);
  return out + "total utterances: " + std::to_string(report.total) + "\n\n" + render_table(t);
}

std::string render_composition_json(const CompositionReport& report, const ConfigEcho& config) {
  ordered_json j = header_json("report", config);
  j["total"] = report.total;
  auto row = [&](const CompositionRow& r) {
    ordered_json rj;
    rj["name"] = r.name;
    rj["count"] = r.region_count;
    rj["fraction_of_total"] = report.of_total(r.region_count);
    rj["aae_count"] = r.aae_count;
    rj["aae_fraction_of_total"] = report.of_total(r.aae_count);
    rj["mae_count"] = r.mae_count;
    rj["mae_fraction_of_total"] = report.of_total(r.mae_count);
    rj["excluded_count"] = r.excluded_count;
    return rj;
  };
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) rows.push_back(row(r));
  j["rows"] = std::move(rows);
  j["overall"] = row(report.overall);
  return dump(j);
}

std::string render_sweep_text(std::span<const PrCurvePoint> points, const ConfigEcho& config) {
  std::string out = header_text("sweep-threshold", config);
  Table t{{"threshold", "tp", "fp", "fn", "tn", "precision", "recall"}};
  for (const auto& p : points) {
    t.push_back({format_fixed(p.threshold, 3), std::to_string(p.tp), std::to_string(p.fp),
                 std::to_string(p.fn), std::to_string(p.tn), optional_percent(p.precision),
                 optional_percent(p.recall)});
  }
  return out + render_table(t);
}

std::string render_sweep_json(std::span<const PrCurvePoint> points, const ConfigEcho& config) {
  ordered_json j = header_json("sweep-threshold", config);
  ordered_json arr = ordered_json::array();
  for (const auto& p : points) {
    ordered_json pj;
    pj["threshold"] = p.threshold;
    pj["tp"] = p.tp;
    pj["fp"] = p.fp;
    pj["fn"] = p.fn;
    pj["tn"] = p.tn;
    pj["precision"] = optional_number(p.precision);
    pj["recall"] = optional_number(p.recall);
    arr.push_back(std::move(pj));
  }
  j["points"] = std::move(arr);
  return dump(j);
}

std::string render_segments(std::span<const Segment> segments) {
  std::string out = "# fairasr-segments 1\n";
  std::string last_source;
  std::size_t k = 0;
  for (const auto& s : segments) {
    if (s.source_id != last_source) {
      last_source = s.source_id;
      k = 0;
    }
    char idx[16];
    std::snprintf(idx, sizeof idx, "%04zu", k++);
    out += s.source_id + "-seg" + idx + "\t" + s.source_id + "\t" + seconds(s.start_ms) + "\t" +
           seconds(s.end_ms) + "\n";
  }
  return out;
}

}  // namespace fairasr
