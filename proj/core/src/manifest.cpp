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

#include "fairasr/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "fairasr/error.hpp"

namespace fairasr {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorKind::kParseError, std::string("field '") + key + "' must be a string", line);
  }
  return it->get<std::string>();
}

std::optional<double> optional_number(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw Error(ErrorKind::kParseError, std::string("field '") + key + "' must be a number", line);
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::kParseError, std::string("field '") + key + "' is not finite", line);
  }
  return v;
}

UtteranceRecord parse_record(const json& obj, std::size_t line) {
  UtteranceRecord rec;
  auto id = optional_string(obj, "id", line);
  if (!id || id->empty()) throw Error(ErrorKind::kMissingRequiredField, "record has no 'id'", line);
  rec.id = std::move(*id);
  auto reference = optional_string(obj, "reference", line);
  if (!reference) {
    throw Error(ErrorKind::kMissingRequiredField, "record '" + rec.id + "' has no 'reference'", line);
  }
  rec.reference = normalize(*reference);
  rec.region = optional_string(obj, "region", line);
  rec.score = optional_number(obj, "score", line);
  if (rec.score && (*rec.score < 0.0 || *rec.score > 1.0)) {
    throw Error(ErrorKind::kParseError, "score must lie in [0, 1]", line);
  }
  rec.duration = optional_number(obj, "duration", line);
  rec.embedding = optional_string(obj, "embedding", line);
  rec.variety = optional_string(obj, "variety", line);
  if (auto it = obj.find("hypotheses"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(ErrorKind::kParseError, "'hypotheses' must be an object", line);
    for (const auto& [system, text] : it->items()) {
      if (!text.is_string()) {
        throw Error(ErrorKind::kParseError, "hypothesis '" + system + "' must be a string", line);
      }
      rec.hypotheses.emplace(system, normalize(text.get<std::string>()));
    }
  }
  return rec;
}

bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  if (!std::getline(in, line)) return false;
  ++number;
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Handler>
void for_each_table_row(std::istream& in, const char* what, Handler&& handle) {
  std::string line;
  std::size_t number = 0;
  while (next_line(in, line, number)) {
    const std::string row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto tab = row.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::kParseError, std::string(what) + " row needs two tab-separated columns",
                  number);
    }
    handle(trim(row.substr(0, tab)), trim(row.substr(tab + 1)), number);
  }
}

}  // namespace

const TokenSeq& UtteranceRecord::hypothesis(const std::string& system) const {
  auto it = hypotheses.find(system);
  if (it == hypotheses.end()) {
    throw Error(ErrorKind::kMissingHypothesis,
                "utterance '" + id + "' has no hypothesis for system '" + system + "'");
  }
  return it->second;
}

Manifest read_manifest(std::istream& in) {
  Manifest manifest;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t number = 0;
  bool first_content = true;
  while (next_line(in, line, number)) {
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParseError, std::string("invalid JSON: ") + e.what(), number);
    }
    if (!obj.is_object()) throw Error(ErrorKind::kParseError, "line is not a JSON object", number);
    if (first_content && obj.contains("schema")) {
      first_content = false;
      if (obj["schema"] != kManifestSchema || !obj.contains("version") ||
          !obj["version"].is_number_integer()) {
        throw Error(ErrorKind::kParseError, "unrecognized manifest header", number);
      }
      manifest.version = obj["version"].get<int>();
      if (manifest.version != kManifestVersion) {
        throw Error(ErrorKind::kParseError,
                    "unsupported manifest version " + std::to_string(manifest.version), number);
      }
      continue;
    }
    first_content = false;
    UtteranceRecord rec = parse_record(obj, number);
    if (!seen.insert(rec.id).second) {
      throw Error(ErrorKind::kDuplicateId, "duplicate utterance id '" + rec.id + "'", number);
    }
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open manifest " + path.string());
  return read_manifest(in);
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  ordered_json header;
  header["schema"] = kManifestSchema;
  header["version"] = manifest.version;
  out << header.dump() << '\n';
  for (const auto& rec : manifest.records) {
    ordered_json obj;
    obj["id"] = rec.id;
    obj["reference"] = rec.reference.join();
    if (rec.region) obj["region"] = *rec.region;
    if (rec.score) obj["score"] = *rec.score;
    if (rec.duration) obj["duration"] = *rec.duration;
    if (rec.embedding) obj["embedding"] = *rec.embedding;
    if (rec.variety) obj["variety"] = *rec.variety;
    if (!rec.hypotheses.empty()) {
      ordered_json hyps = ordered_json::object();
      for (const auto& [system, tokens] : rec.hypotheses) hyps[system] = tokens.join();
      obj["hypotheses"] = std::move(hyps);
    }
    out << obj.dump() << '\n';
  }
}

ScoreTable read_scores(std::istream& in) {
  ScoreTable table;
  std::unordered_set<std::string> seen;
  for_each_table_row(in, "score", [&](std::string id, const std::string& value, std::size_t line) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, "score '" + value + "' is not a number", line);
    }
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::kParseError, "score must lie in [0, 1]", line);
    if (!seen.insert(id).second) throw Error(ErrorKind::kDuplicateId, "duplicate id '" + id + "'", line);
    table.emplace_back(std::move(id), v);
  });
  return table;
}

ScoreTable load_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open score file " + path.string());
  return read_scores(in);
}

void write_scores(std::ostream& out, const ScoreTable& scores) {
  out << "# fairasr-scores 1\n";
  for (const auto& [id, score] : scores) out << id << '\t' << format_double(score) << '\n';
}

GoldTable read_gold(std::istream& in) {
  GoldTable table;
  for_each_table_row(in, "gold", [&](std::string id, const std::string& value, std::size_t line) {
    if (value != "0" && value != "1") {
      throw Error(ErrorKind::kParseError, "gold label must be 0 or 1", line);
    }
    if (!table.emplace(std::move(id), value == "1").second) {
      throw Error(ErrorKind::kDuplicateId, "duplicate id in gold labels", line);
    }
  });
  return table;
}

GoldTable load_gold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open gold file " + path.string());
  return read_gold(in);
}

void write_gold(std::ostream& out, const GoldTable& gold) {
  out << "# fairasr-gold 1\n";
  for (const auto& [id, positive] : gold) out << id << '\t' << (positive ? 1 : 0) << '\n';
}

void apply_scores(Corpus& corpus, const ScoreTable& scores) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < corpus.size(); ++i) by_id.emplace(corpus[i].id, i);
  for (const auto& [id, score] : scores) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::kInvalidArgument, "score for unknown utterance '" + id + "'");
    }
    corpus[it->second].score = score;
  }
}

EmbeddingFrames load_embedding(const UtteranceRecord& record,
                               const std::filesystem::path& base_dir) {
  if (!record.embedding) {
    throw Error(ErrorKind::kMissingEmbedding, "utterance '" + record.id + "' has no embedding");
  }
  std::filesystem::path path = *record.embedding;
  if (path.is_relative()) path = base_dir / path;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open embedding " + path.string());
  try {
    return read_frames(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace fairasr
