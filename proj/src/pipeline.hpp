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

// Command pipelines (ingest, match, stats, basemap, overlay, diversity) and the
// run configuration they share.

#pragma once

#include "errors.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jmap {

/// Unknown configuration key or a value that does not parse.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class KeyKind { path, text, real, integer, flag, id_list };

struct ConfigKey {
  const char* name;
  KeyKind kind;
  const char* default_value;  // empty: no default
  const char* help;
};

/// String-valued settings with typed, validated accessors. Later `set` calls
/// override earlier ones, so a config file loaded first is overridden by flags.
class RunConfig {
 public:
  static const std::vector<ConfigKey>& schema();
  static const ConfigKey* find_key(std::string_view name);

  void set(std::string_view key, std::string value);
  /// INI-style file: top-level `key = value` lines apply to every command, a
  /// `[command]` section only to that command.
  void load_file(const std::filesystem::path& path, std::string_view command);

  bool is_set(std::string_view key) const;
  std::string text(std::string_view key) const;
  double real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  bool flag(std::string_view key) const;
  std::vector<std::int64_t> id_list(std::string_view key) const;
  std::optional<std::filesystem::path> path(std::string_view key) const;
  std::filesystem::path require_path(std::string_view key) const;

  /// Every key with its effective value; paths reduced to file names.
  std::map<std::string, std::string> snapshot() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

struct RunResult {
  std::string summary;  // human-readable, for standard output
  std::vector<std::string> warnings;
  std::string manifest;  // JSON text, also written to out_dir
  std::vector<std::filesystem::path> outputs;
};

const std::vector<std::string>& command_names();

/// Runs one command. Throws ParseError, ContractError, IoError or ConfigError.
RunResult run_command(std::string_view command, const RunConfig& config);

}  // namespace jmap
