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

#include "fairasr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include <json.hpp>

#include "fairasr/error.hpp"
#include "fairasr/random.hpp"

namespace fairasr {
namespace {

using nlohmann::json;

enum class TokenAction : unsigned char { kKeep, kSubstitute, kDelete };

// Draws the first k entries of a uniform random permutation of [0, n).
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.index(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::size_t planted(double rate, std::size_t words) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(words)));
}

void check_rate(double rate, const std::string& what) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidSpec, what + " must lie in [0, 1]");
  }
}

std::string padded(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", i);
  return buf;
}

// Exact per-region counts by largest remainder, then shuffled.
std::vector<std::string> assign_regions(Rng& rng, const std::vector<RegionWeight>& weights,
                                        std::size_t n) {
  double total = 0.0;
  for (const auto& w : weights) {
    if (!(w.weight >= 0.0) || !std::isfinite(w.weight)) {
      throw Error(ErrorKind::kInvalidSpec, "region weights must be finite and non-negative");
    }
    total += w.weight;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidSpec, "region weights sum to zero");

  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double exact = weights[k].weight / total * static_cast<double>(n);
    counts[k] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[k];
    remainders.emplace_back(exact - std::floor(exact), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[remainders[r % remainders.size()].second];

  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < weights.size(); ++k) out.insert(out.end(), counts[k], weights[k].region);
  rng.shuffle(out.begin(), out.end());
  return out;
}

PlantedCounts plant_errors(Rng& rng, const SystemPlan& plan,
                           const std::vector<std::vector<std::string>>& refs,
                           const std::vector<std::string>& noise,
                           std::vector<std::vector<std::string>>& hyps_out) {
  std::vector<std::size_t> offsets(refs.size() + 1, 0);
  for (std::size_t u = 0; u < refs.size(); ++u) offsets[u + 1] = offsets[u] + refs[u].size();
  const std::size_t words = offsets.back();

  PlantedCounts counts;
  counts.ref_words = words;
  counts.substitutions = planted(plan.rates.substitution, words);
  counts.deletions = planted(plan.rates.deletion, words);
  counts.insertions = planted(plan.rates.insertion, words);
  if (counts.substitutions + counts.deletions > words) {
    throw Error(ErrorKind::kInvalidSpec,
                "system '" + plan.name + "' plants more substitutions and deletions than words");
  }

  std::vector<TokenAction> actions(words, TokenAction::kKeep);
  const auto touched = sample_distinct(rng, words, counts.deletions + counts.substitutions);
  for (std::size_t k = 0; k < touched.size(); ++k) {
    actions[touched[k]] = k < counts.deletions ? TokenAction::kDelete : TokenAction::kSubstitute;
  }

  // Insertion slots (before each token, plus the end) of utterances that
  // received no deletion.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t u = 0; u < refs.size(); ++u) {
    const bool has_deletion =
        std::any_of(actions.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                    actions.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]),
                    [](TokenAction a) { return a == TokenAction::kDelete; });
    if (has_deletion) continue;
    for (std::size_t p = 0; p <= refs[u].size(); ++p) slots.emplace_back(u, p);
  }
  if (counts.insertions > slots.size()) {
    throw Error(ErrorKind::kInvalidSpec,
                "system '" + plan.name + "' has too few deletion-free slots for its insertions");
  }
  std::vector<std::vector<bool>> insert_at(refs.size());
  for (std::size_t u = 0; u < refs.size(); ++u) insert_at[u].assign(refs[u].size() + 1, false);
  for (std::size_t k : sample_distinct(rng, slots.size(), counts.insertions)) {
    insert_at[slots[k].first][slots[k].second] = true;
  }

  auto noise_word = [&] { return noise[static_cast<std::size_t>(rng.index(noise.size()))]; };
  hyps_out.assign(refs.size(), {});
  for (std::size_t u = 0; u < refs.size(); ++u) {
    auto& hyp = hyps_out[u];
    for (std::size_t p = 0; p <= refs[u].size(); ++p) {
      if (insert_at[u][p]) hyp.push_back(noise_word());
      if (p == refs[u].size()) break;
      switch (actions[offsets[u] + p]) {
        case TokenAction::kKeep: hyp.push_back(refs[u][p]); break;
        case TokenAction::kSubstitute: hyp.push_back(noise_word()); break;
        case TokenAction::kDelete: break;
      }
    }
  }
  return counts;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace

std::string embedding_path_for(const std::string& id) { return "embeddings/" + id + ".frames"; }

SyntheticSpec parse_synthetic_spec(std::string_view json_text) {
  SyntheticSpec spec;
  try {
    const json root = json::parse(json_text);
    if (!root.is_object()) throw Error(ErrorKind::kInvalidSpec, "synthetic spec must be an object");
    spec.seed = get_or<std::uint64_t>(root, "seed", spec.seed);
    spec.vocabulary_size = get_or<std::size_t>(root, "vocabulary_size", spec.vocabulary_size);
    spec.vocabulary = get_or<std::vector<std::string>>(root, "vocabulary", {});
    spec.min_words = get_or<std::size_t>(root, "min_words", spec.min_words);
    spec.max_words = get_or<std::size_t>(root, "max_words", spec.max_words);
    spec.noise_vocabulary_size =
        get_or<std::size_t>(root, "noise_vocabulary_size", spec.noise_vocabulary_size);
    spec.seconds_per_word = get_or<double>(root, "seconds_per_word", spec.seconds_per_word);
    spec.embedding_dim = get_or<std::size_t>(root, "embedding_dim", spec.embedding_dim);
    spec.embedding_frames = get_or<std::size_t>(root, "embedding_frames", spec.embedding_frames);
    for (const auto& v : root.at("varieties")) {
      VarietySpec variety;
      variety.name = v.at("name").get<std::string>();
      variety.utterances = v.at("utterances").get<std::size_t>();
      variety.score_min = get_or<double>(v, "score_min", variety.score_min);
      variety.score_max = get_or<double>(v, "score_max", variety.score_max);
      variety.gold_positive = get_or<bool>(v, "gold_positive", false);
      variety.embedding_shift = get_or<double>(v, "embedding_shift", 0.0);
      if (auto it = v.find("regions"); it != v.end()) {
        for (const auto& [region, weight] : it->items()) {
          variety.regions.push_back({region, weight.get<double>()});
        }
      }
      if (auto it = v.find("systems"); it != v.end()) {
        for (const auto& [name, rates] : it->items()) {
          SystemPlan plan{name, {}};
          plan.rates.substitution = get_or<double>(rates, "substitution", 0.0);
          plan.rates.deletion = get_or<double>(rates, "deletion", 0.0);
          plan.rates.insertion = get_or<double>(rates, "insertion", 0.0);
          variety.systems.push_back(std::move(plan));
        }
      }
      spec.varieties.push_back(std::move(variety));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidSpec, std::string("bad synthetic spec: ") + e.what());
  }
  return spec;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.min_words < 1 || spec.max_words < spec.min_words) {
    throw Error(ErrorKind::kInvalidSpec, "need 1 <= min_words <= max_words");
  }
  if (spec.noise_vocabulary_size < 1) {
    throw Error(ErrorKind::kInvalidSpec, "noise vocabulary must be non-empty");
  }
  if (spec.embedding_dim > 0 && spec.embedding_frames < 1) {
    throw Error(ErrorKind::kInvalidSpec, "embedding_frames must be >= 1");
  }

  std::vector<std::string> vocab = spec.vocabulary;
  if (vocab.empty()) {
    for (std::size_t i = 0; i < spec.vocabulary_size; ++i) vocab.push_back("w" + std::to_string(i));
  }
  if (vocab.empty()) throw Error(ErrorKind::kInvalidSpec, "vocabulary is empty");
  for (auto& w : vocab) {
    const TokenSeq t = normalize(w);
    if (t.size() != 1 || t[0] != w) {
      throw Error(ErrorKind::kInvalidSpec, "vocabulary word '" + w + "' is not a normalized token");
    }
  }
  const std::set<std::string> vocab_set(vocab.begin(), vocab.end());
  std::vector<std::string> noise;
  for (std::size_t i = 0; i < spec.noise_vocabulary_size; ++i) {
    std::string w = "oov" + std::to_string(i);
    if (vocab_set.contains(w)) {
      throw Error(ErrorKind::kInvalidSpec, "vocabulary overlaps the noise word '" + w + "'");
    }
    noise.push_back(std::move(w));
  }

  SyntheticCorpus out;
  std::set<std::string> variety_names;
  for (const auto& variety : spec.varieties) {
    if (variety.name.empty() || !variety_names.insert(variety.name).second) {
      throw Error(ErrorKind::kInvalidSpec, "variety names must be unique and non-empty");
    }
    if (!(0.0 <= variety.score_min && variety.score_min <= variety.score_max &&
          variety.score_max <= 1.0)) {
      throw Error(ErrorKind::kInvalidSpec, "variety '" + variety.name + "' needs 0 <= score_min <= score_max <= 1");
    }
    std::set<std::string> system_names;
    for (const auto& plan : variety.systems) {
      if (!system_names.insert(plan.name).second) {
        throw Error(ErrorKind::kInvalidSpec, "duplicate system '" + plan.name + "'");
      }
      check_rate(plan.rates.substitution, "substitution rate");
      check_rate(plan.rates.deletion, "deletion rate");
      check_rate(plan.rates.insertion, "insertion rate");
    }

    Rng rng(mix_seed(spec.seed, "variety/" + variety.name));
    std::vector<std::vector<std::string>> refs(variety.utterances);
    for (auto& ref : refs) {
      const auto len = spec.min_words +
                       static_cast<std::size_t>(rng.index(spec.max_words - spec.min_words + 1));
      for (std::size_t k = 0; k < len; ++k) {
        ref.push_back(vocab[static_cast<std::size_t>(rng.index(vocab.size()))]);
      }
    }
    std::vector<std::string> regions;
    if (!variety.regions.empty()) regions = assign_regions(rng, variety.regions, variety.utterances);

    const std::size_t first = out.records.size();
    for (std::size_t u = 0; u < variety.utterances; ++u) {
      UtteranceRecord rec;
      rec.id = variety.name + "-" + padded(u);
      rec.reference = TokenSeq::from_tokens(refs[u]);
      if (!regions.empty()) rec.region = regions[u];
      rec.score = rng.uniform(variety.score_min, variety.score_max);
      rec.duration = std::round(static_cast<double>(refs[u].size()) * spec.seconds_per_word * 1000.0) / 1000.0;
      rec.variety = variety.name;
      out.gold.emplace(rec.id, variety.gold_positive);
      out.records.push_back(std::move(rec));
    }

    for (const auto& plan : variety.systems) {
      Rng srng(mix_seed(spec.seed, "system/" + variety.name + "/" + plan.name));
      std::vector<std::vector<std::string>> hyps;
      out.truth[variety.name][plan.name] = plant_errors(srng, plan, refs, noise, hyps);
      for (std::size_t u = 0; u < variety.utterances; ++u) {
        out.records[first + u].hypotheses.emplace(plan.name, TokenSeq::from_tokens(std::move(hyps[u])));
      }
    }

    if (spec.embedding_dim > 0) {
      Rng erng(mix_seed(spec.seed, "embedding/" + variety.name));
      const auto t = static_cast<Eigen::Index>(spec.embedding_frames);
      const auto d = static_cast<Eigen::Index>(spec.embedding_dim);
      for (std::size_t u = 0; u < variety.utterances; ++u) {
        Eigen::MatrixXd frames(t, d);
        for (Eigen::Index r = 0; r < t; ++r)
          for (Eigen::Index c = 0; c < d; ++c) frames(r, c) = variety.embedding_shift + erng.normal();
        auto& rec = out.records[first + u];
        rec.embedding = embedding_path_for(rec.id);
        out.embeddings.emplace(rec.id, EmbeddingFrames(std::move(frames)));
      }
    }
  }
  return out;
}

}  // namespace fairasr
