/*
 *   Copyright 2026 The journalmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "text.hpp"

#include <filesystem>
#include <string>
#include <unistd.h>

namespace testing {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(JMAP_FIXTURES) / relative;
}

inline std::string fixture_text(const std::string& relative) { return jmap::read_file(fixture(relative)); }

inline std::filesystem::path scratch_root() {
  return std::filesystem::temp_directory_path() / ("jmap_test_" + std::to_string(::getpid()));
}

/// Removes the scratch tree when the test binary exits.
struct ScratchCleanup {
  ~ScratchCleanup() {
    std::error_code ec;
    std::filesystem::remove_all(scratch_root(), ec);
  }
};
inline ScratchCleanup scratch_cleanup;

/// Fresh per-process scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = scratch_root() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
