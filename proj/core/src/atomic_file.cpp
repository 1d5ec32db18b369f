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

#include "fairasr/atomic_file.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "fairasr/error.hpp"

namespace fairasr {
namespace fs = std::filesystem;

namespace {

fs::path temp_sibling(const fs::path& target) {
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  return tmp;
}

}  // namespace

void OutputSet::add(fs::path path, std::string content) {
  files_.emplace_back(std::move(path), std::move(content));
}

void OutputSet::commit() {
  std::vector<fs::path> temps;
  auto cleanup = [&temps] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [path, content] : files_) {
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    const fs::path tmp = temp_sibling(path);
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorKind::kIoError, "cannot write " + path.string());
    }
  }
  // Catch the predictable rename failures before anything is published.
  std::vector<bool> existed;
  for (const auto& [path, content] : files_) {
    std::error_code ec;
    const auto status = fs::status(path, ec);
    if (fs::is_directory(status)) {
      cleanup();
      throw Error(ErrorKind::kIoError, "cannot publish " + path.string() + ": is a directory");
    }
    existed.push_back(fs::exists(status));
  }
  for (std::size_t i = 0; i < files_.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], files_[i].first, ec);
    if (ec) {
      // Files this set created are withdrawn; overwritten ones cannot be restored.
      for (std::size_t k = 0; k < i; ++k) {
        std::error_code ignored;
        if (!existed[k]) fs::remove(files_[k].first, ignored);
      }
      cleanup();
      throw Error(ErrorKind::kIoError,
                  "cannot publish " + files_[i].first.string() + ": " + ec.message());
    }
  }
  files_.clear();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  OutputSet set;
  set.add(path, content);
  set.commit();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fairasr
