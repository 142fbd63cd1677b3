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

// jmap: command-line front end over the journalmap C API.

#include <journalmap/journalmap.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <deque>
#include <string>

namespace {

struct Setting {
  std::string command;
  std::string key;
  jmap_key_kind kind = JMAP_KEY_TEXT;
  std::string value;
  bool enabled = false;
  CLI::Option* option = nullptr;
};

const char* describe(const std::string& command) {
  if (command == "ingest") return "parse a journal list, citation network and documents; merge duplicate ISSNs";
  if (command == "match") return "match journals across two databases (ISSN, exact title, fuzzy title)";
  if (command == "stats") return "network statistics for shared, unique and all journals; flows and rank differences";
  if (command == "basemap") return "cosine map: threshold, giant component, clustering and layout";
  if (command == "overlay") return "project a document set onto a base map and compute Rao-Stirling diversity";
  return "Rao-Stirling diversity of a document set without writing the overlay map";
}

const char* type_name(jmap_key_kind kind) {
  switch (kind) {
    case JMAP_KEY_PATH: return "PATH";
    case JMAP_KEY_REAL: return "REAL";
    case JMAP_KEY_INTEGER: return "INT";
    case JMAP_KEY_ID_LIST: return "IDS";
    default: return "TEXT";
  }
}

int report(jmap_status status) {
  std::fprintf(stderr, "jmap: error: %s\n", jmap_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"journalmap: journal citation networks, cross-database matching, base maps and overlays", "jmap"};
  app.set_version_flag("--version", std::string(jmap_version()));
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("-c,--config", config_file, "INI file; top-level keys and the [command] section apply")
      ->type_name("PATH");

  // Every subcommand takes every setting; each keeps its own copy so only the
  // flags given to the chosen command are applied.
  std::vector<CLI::App*> commands;
  std::deque<Setting> settings;
  for (size_t c = 0; c < jmap_command_count(); ++c) {
    const std::string name = jmap_command_name(c);
    auto* sub = app.add_subcommand(name, describe(name))->fallthrough();
    commands.push_back(sub);
    for (size_t i = 0; i < jmap_config_key_count(); ++i) {
      auto& s = settings.emplace_back();
      s.command = name;
      s.key = jmap_config_key_name(i);
      s.kind = jmap_config_key_kind(i);
      std::string flag = "--" + s.key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      std::string help = jmap_config_key_help(i);
      const std::string def = jmap_config_key_default(i);
      if (s.kind == JMAP_KEY_FLAG) {
        s.option = sub->add_flag(flag, s.enabled, help);
      } else {
        if (!def.empty()) help += " [default: " + def + "]";
        s.option = sub->add_option(flag, s.value, help)->type_name(type_name(s.kind));
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : JMAP_ERR_CONFIG;
  }

  std::string command;
  for (auto* sub : commands)
    if (sub->parsed()) command = sub->get_name();

  jmap_config* config = nullptr;
  if (jmap_config_new(&config) != JMAP_OK) return report(JMAP_ERR_INTERNAL);
  jmap_status status = JMAP_OK;
  if (!config_file.empty()) status = jmap_config_load(config, config_file.c_str(), command.c_str());
  for (const auto& s : settings) {
    if (status != JMAP_OK) break;
    if (s.command != command || s.option->count() == 0) continue;
    const std::string value = s.kind == JMAP_KEY_FLAG ? (s.enabled ? "true" : "false") : s.value;
    status = jmap_config_set(config, s.key.c_str(), value.c_str());
  }

  jmap_result* result = nullptr;
  if (status == JMAP_OK) status = jmap_run(config, command.c_str(), &result);
  jmap_config_free(config);
  if (status != JMAP_OK) return report(status);

  for (size_t i = 0; i < jmap_result_warning_count(result); ++i)
    std::fprintf(stderr, "warning: %s\n", jmap_result_warning(result, i));
  std::fputs(jmap_result_summary(result), stdout);
  jmap_result_free(result);
  return 0;
}
