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
#include <cstdlib>
#include <ostream>

#include "fairasr/atomic_file.hpp"
#include "fairasr/error.hpp"
#include "fairasr/manifest.hpp"
#include "commands.hpp"

namespace fairasr::cli {

std::uint64_t default_seed() {
  const char* env = std::getenv("FAIRASR_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, seed);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("FAIRASR_SEED is not an unsigned integer: ") + env);
  }
  return seed;
}

std::string echo_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

void emit_report(Io io, const std::string& prefix, const std::string& text,
                 const std::string& json) {
  if (!prefix.empty()) {
    OutputSet outputs;
    outputs.add(prefix + ".txt", text);
    outputs.add(prefix + ".json", json);
    outputs.commit();
  }
  io.out << text;
}

void emit_file(Io io, const std::string& path, const std::string& content) {
  if (path.empty()) {
    io.out << content;
  } else {
    write_file_atomic(path, content);
  }
}

Corpus load_records(const std::string& path) { return load_manifest(path).records; }

std::filesystem::path parent_dir(const std::string& path) {
  return std::filesystem::path(path).parent_path();
}

}  // namespace fairasr::cli
