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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fairasr {

/// Collects output files in memory and publishes them together: every file
/// is written to a temporary sibling first and renamed only after all
/// writes succeeded, so a failed command leaves no partial outputs.
class OutputSet {
 public:
  void add(std::filesystem::path path, std::string content);
  /// Throws Error(kIoError); already-written temporaries are removed.
  void commit();
  bool empty() const noexcept { return files_.empty(); }

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

/// Single-file convenience wrapper over OutputSet.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace fairasr
