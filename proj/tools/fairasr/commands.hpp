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

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairasr/corpus.hpp"
#include "fairasr/report.hpp"

namespace fairasr::cli {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Each subcommand registers the action to run once parsing succeeded.
using Registry = std::vector<std::pair<CLI::App*, std::function<void()>>>;

void add_eval_commands(CLI::App& app, Io io, Registry& registry);
void add_data_commands(CLI::App& app, Io io, Registry& registry);
void add_scorer_commands(CLI::App& app, Io io, Registry& registry);

/// FAIRASR_SEED if set, else 0.
std::uint64_t default_seed();

/// Shortest round-trip decimal form, used in config echoes.
std::string echo_number(double value);

/// Prints `text` to stdout and, with a prefix, publishes PREFIX.txt and
/// PREFIX.json together.
void emit_report(Io io, const std::string& prefix, const std::string& text,
                 const std::string& json);

/// Writes `content` to `path`, or to stdout when the path is empty.
void emit_file(Io io, const std::string& path, const std::string& content);

Corpus load_records(const std::string& path);

std::filesystem::path parent_dir(const std::string& path);

}  // namespace fairasr::cli
