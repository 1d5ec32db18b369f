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

#include "fairasr/cli.hpp"

#include <ostream>

#include <json.hpp>

#include "fairasr/error.hpp"
#include "fairasr/version.hpp"
#include "commands.hpp"

namespace fairasr::cli {
namespace {

void write_error(std::ostream& err, std::string_view kind, const std::string& message,
                 const std::optional<std::size_t>& line = std::nullopt) {
  nlohmann::ordered_json record;
  record["kind"] = kind;
  record["message"] = message;
  if (line) record["line"] = *line;
  err << nlohmann::ordered_json{{"error", record}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fairness-aware ASR evaluation and data selection", "fairasr"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough(false);

  Io io{out, err};
  Registry registry;
  add_eval_commands(app, io, registry);
  add_data_commands(app, io, registry);
  add_scorer_commands(app, io, registry);

  std::vector<const char*> argv{"fairasr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return 2;
  }

  try {
    for (auto& [sub, action] : registry) {
      if (sub->parsed()) {
        action();
        return 0;
      }
    }
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what(), e.line());
    return 1;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
    return 1;
  }
  write_error(err, "UsageError", "no command given");
  return 2;
}

}  // namespace fairasr::cli
