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

#include <charconv>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "fairasr/atomic_file.hpp"
#include "fairasr/corpus_selection.hpp"
#include "fairasr/error.hpp"
#include "fairasr/manifest.hpp"
#include "fairasr/report.hpp"
#include "fairasr/synthetic.hpp"
#include "commands.hpp"

namespace fairasr::cli {
namespace {

namespace fs = std::filesystem;

// Selection config: {"region_set": "southern.txt", "aae_threshold": 0.7,
// "mae_threshold": 0.4}. The region set path is relative to the config.
SelectionConfig load_selection_config(const std::string& path) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError, "selection config: " + std::string(e.what()));
  }
  if (!root.is_object()) throw Error(ErrorKind::kInvalidArgument, "selection config must be an object");
  ScoreThresholds thresholds;
  std::string region_file;
  for (const auto& [key, value] : root.items()) {
    if (key == "region_set" && value.is_string()) {
      region_file = value.get<std::string>();
    } else if (key == "aae_threshold" && value.is_number()) {
      thresholds.aae = value.get<double>();
    } else if (key == "mae_threshold" && value.is_number()) {
      thresholds.mae = value.get<double>();
    } else if (key != "version") {
      throw Error(ErrorKind::kInvalidArgument, "selection config: bad or unknown key '" + key + "'");
    }
  }
  if (region_file.empty()) throw Error(ErrorKind::kMissingRequiredField, "selection config needs region_set");
  thresholds.validate();
  fs::path region_path = region_file;
  if (region_path.is_relative()) region_path = parent_dir(path) / region_path;
  return SelectionConfig{RegionSet::load(region_path), thresholds};
}

std::string id_list(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += id + '\n';
  return out;
}

struct SelectOptions {
  std::string config;
  std::string manifest;
  std::string scores;
  std::string out_dir;
};

void run_select(Io io, const SelectOptions& o) {
  const SelectionConfig config = load_selection_config(o.config);
  Corpus corpus = load_records(o.manifest);
  if (!o.scores.empty()) apply_scores(corpus, load_scores(o.scores));
  const SelectionResult result = select_utterances(corpus, config);

  ConfigEcho echo{{"config", o.config},
                  {"manifest", o.manifest},
                  {"region_set", config.region_set.name()},
                  {"aae_threshold", echo_number(config.thresholds.aae)},
                  {"mae_threshold", echo_number(config.thresholds.mae)}};
  if (!o.scores.empty()) echo.emplace_back("scores", o.scores);
  const std::string text = render_selection_text(result, echo);

  const fs::path dir = o.out_dir;
  OutputSet outputs;
  outputs.add(dir / "aae.ids", id_list(result.aae_ids));
  outputs.add(dir / "mae.ids", id_list(result.mae_ids));
  outputs.add(dir / "excluded.ids", id_list(result.excluded_ids));
  outputs.add(dir / "stats.txt", text);
  outputs.add(dir / "stats.json", render_selection_json(result, echo));
  outputs.commit();
  io.out << text;
}

struct ReportOptions {
  std::string manifest;
  std::vector<std::string> region_sets;
  std::string scores;
  double aae_threshold = ScoreThresholds{}.aae;
  double mae_threshold = ScoreThresholds{}.mae;
  std::string out;
};

void run_report(Io io, const ReportOptions& o) {
  Corpus corpus = load_records(o.manifest);
  if (!o.scores.empty()) apply_scores(corpus, load_scores(o.scores));
  std::vector<RegionSet> sets;
  for (const auto& path : o.region_sets) sets.push_back(RegionSet::load(path));
  const ScoreThresholds thresholds{o.aae_threshold, o.mae_threshold};
  thresholds.validate();
  const CompositionReport report = composition_report(corpus, sets, thresholds);

  ConfigEcho echo{{"manifest", o.manifest}};
  for (const auto& path : o.region_sets) echo.emplace_back("region_set", path);
  if (!o.scores.empty()) echo.emplace_back("scores", o.scores);
  echo.emplace_back("aae_threshold", echo_number(thresholds.aae));
  echo.emplace_back("mae_threshold", echo_number(thresholds.mae));
  emit_report(io, o.out, render_composition_text(report, echo),
              render_composition_json(report, echo));
}

// Recordings: "id<TAB>duration_seconds" per line; '#' and blank lines skipped.
std::vector<std::pair<std::string, double>> load_recordings(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<std::string, double>> recs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorKind::kParseError, "expected id<TAB>duration", lineno);
    }
    double duration = 0.0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, duration);
    if (ec != std::errc() || ptr != last || !(duration >= 0.0)) {
      throw Error(ErrorKind::kParseError, "bad duration '" + std::string(first, last) + "'", lineno);
    }
    recs.emplace_back(line.substr(0, tab), duration);
  }
  return recs;
}

struct SegmentOptions {
  std::string recordings;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_segment(Io io, const SegmentOptions& o) {
  const std::uint64_t seed = o.seed.value_or(default_seed());
  std::vector<Segment> segments;
  for (const auto& [id, duration] : load_recordings(o.recordings)) {
    auto cut = segment_longform(id, duration, seed);
    segments.insert(segments.end(), cut.begin(), cut.end());
  }
  std::string text = render_segments(segments);
  text.insert(text.find('\n') + 1, "# seed " + std::to_string(seed) + "\n");
  emit_file(io, o.out, text);
}

struct SynthOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

std::string manifest_text(const Corpus& records) {
  std::ostringstream out;
  write_manifest(out, Manifest{kManifestVersion, records});
  return out.str();
}

std::string truth_json(const SyntheticSpec& spec, const SyntheticCorpus& corpus) {
  nlohmann::ordered_json j;
  j["schema"] = "fairasr-synthetic-truth";
  j["version"] = 1;
  j["seed"] = spec.seed;
  nlohmann::ordered_json varieties = nlohmann::ordered_json::object();
  for (const auto& [variety, systems] : corpus.truth) {
    nlohmann::ordered_json sj = nlohmann::ordered_json::object();
    for (const auto& [system, c] : systems) {
      sj[system] = {{"ref_words", c.ref_words},
                    {"substitutions", c.substitutions},
                    {"deletions", c.deletions},
                    {"insertions", c.insertions}};
    }
    varieties[variety] = std::move(sj);
  }
  j["varieties"] = std::move(varieties);
  return j.dump(2) + "\n";
}

void run_synth(Io io, const SynthOptions& o) {
  const std::string text = read_file(o.config);
  SyntheticSpec spec = parse_synthetic_spec(text);
  if (o.seed) {
    spec.seed = *o.seed;
  } else {
    const auto root = nlohmann::json::parse(text);
    if (!root.contains("seed")) spec.seed = default_seed();
  }
  const SyntheticCorpus corpus = generate_synthetic(spec);

  const fs::path dir = o.out_dir;
  OutputSet outputs;
  outputs.add(dir / "all.jsonl", manifest_text(corpus.records));
  std::map<std::string, Corpus> by_variety;
  for (const auto& rec : corpus.records) by_variety[rec.variety.value_or("")].push_back(rec);
  for (const auto& v : spec.varieties) outputs.add(dir / (v.name + ".jsonl"), manifest_text(by_variety[v.name]));
  outputs.add(dir / "truth.json", truth_json(spec, corpus));
  std::ostringstream gold;
  write_gold(gold, corpus.gold);
  outputs.add(dir / "gold.tsv", gold.str());
  for (const auto& [id, frames] : corpus.embeddings) {
    std::ostringstream f;
    write_frames(f, frames);
    outputs.add(dir / embedding_path_for(id), f.str());
  }
  outputs.commit();
  io.out << "wrote " << corpus.records.size() << " utterances in " << spec.varieties.size()
         << " varieties to " << o.out_dir << " (seed " << spec.seed << ")\n";
}

}  // namespace

void add_data_commands(CLI::App& app, Io io, Registry& registry) {
  {
    auto o = std::make_shared<SelectOptions>();
    auto* sub = app.add_subcommand("select-data", "Region filter and score partition into id lists");
    sub->add_option("--config", o->config, "Selection config (JSON)")->required();
    sub->add_option("--manifest", o->manifest, "Utterance manifest")->required();
    sub->add_option("--scores", o->scores, "Score table overriding manifest scores");
    sub->add_option("--out-dir", o->out_dir, "Directory for id lists and stats")->required();
    registry.emplace_back(sub, [io, o] { run_select(io, *o); });
  }
  {
    auto o = std::make_shared<ReportOptions>();
    auto* sub = app.add_subcommand("report", "Dialect composition of a corpus per region set");
    sub->add_option("--manifest", o->manifest, "Utterance manifest")->required();
    sub->add_option("--region-set", o->region_sets, "Region set file (repeatable)")->required();
    sub->add_option("--scores", o->scores, "Score table overriding manifest scores");
    sub->add_option("--aae-threshold", o->aae_threshold, "Scores at or above are AAE")->capture_default_str();
    sub->add_option("--mae-threshold", o->mae_threshold, "Scores below are non-AAE")->capture_default_str();
    sub->add_option("--out", o->out, "Write PREFIX.txt and PREFIX.json");
    registry.emplace_back(sub, [io, o] { run_report(io, *o); });
  }
  {
    auto o = std::make_shared<SegmentOptions>();
    auto* sub = app.add_subcommand("segment", "Cut long recordings into 5-20 s segments");
    sub->add_option("--recordings", o->recordings, "TSV of id and duration in seconds")->required();
    sub->add_option("--seed", o->seed, "Random seed (default $FAIRASR_SEED or 0)");
    sub->add_option("--out", o->out, "Segment TSV (stdout if omitted)");
    registry.emplace_back(sub, [io, o] { run_segment(io, *o); });
  }
  {
    auto o = std::make_shared<SynthOptions>();
    auto* sub = app.add_subcommand("synth", "Generate a synthetic corpus with planted errors");
    sub->add_option("--config", o->config, "Synthetic spec (JSON)")->required();
    sub->add_option("--seed", o->seed, "Overrides the spec seed");
    sub->add_option("--out-dir", o->out_dir, "Output directory")->required();
    registry.emplace_back(sub, [io, o] { run_synth(io, *o); });
  }
}

}  // namespace fairasr::cli
