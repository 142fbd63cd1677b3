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

#include "journalmap/journalmap.h"

#include "match.hpp"
#include "network.hpp"
#include "pipeline.hpp"

#include <memory>
#include <new>
#include <string>

struct jmap_config {
  jmap::RunConfig config;
};

struct jmap_result {
  jmap::RunResult result;
};

namespace {

thread_local std::string last_error;

jmap_status fail(jmap_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps the library's exception hierarchy onto status codes.
template <class F>
jmap_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return JMAP_OK;
  } catch (const jmap::ParseError& e) {
    return fail(JMAP_ERR_PARSE, e.what());
  } catch (const jmap::ContractError& e) {
    return fail(JMAP_ERR_CONTRACT, e.what());
  } catch (const jmap::IoError& e) {
    return fail(JMAP_ERR_IO, e.what());
  } catch (const jmap::ConfigError& e) {
    return fail(JMAP_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(JMAP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(JMAP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(JMAP_ERR_INTERNAL, "unknown error");
  }
}

const jmap::ConfigKey* key_at(size_t index) {
  const auto& keys = jmap::RunConfig::schema();
  return index < keys.size() ? &keys[index] : nullptr;
}

}  // namespace

extern "C" {

const char* jmap_version(void) { return JMAP_VERSION; }

const char* jmap_last_error(void) { return last_error.c_str(); }

size_t jmap_config_key_count(void) { return jmap::RunConfig::schema().size(); }

const char* jmap_config_key_name(size_t index) {
  const auto* k = key_at(index);
  return k ? k->name : nullptr;
}

jmap_key_kind jmap_config_key_kind(size_t index) {
  const auto* k = key_at(index);
  return k ? static_cast<jmap_key_kind>(k->kind) : JMAP_KEY_TEXT;
}

const char* jmap_config_key_default(size_t index) {
  const auto* k = key_at(index);
  return k ? k->default_value : nullptr;
}

const char* jmap_config_key_help(size_t index) {
  const auto* k = key_at(index);
  return k ? k->help : nullptr;
}

size_t jmap_command_count(void) { return jmap::command_names().size(); }

const char* jmap_command_name(size_t index) {
  const auto& names = jmap::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

jmap_status jmap_config_new(jmap_config** out) {
  if (!out) return fail(JMAP_ERR_ARGUMENT, "jmap_config_new: out is NULL");
  return guarded([&] { *out = new jmap_config(); });
}

void jmap_config_free(jmap_config* config) { delete config; }

jmap_status jmap_config_set(jmap_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(JMAP_ERR_ARGUMENT, "jmap_config_set: NULL argument");
  return guarded([&] { config->config.set(key, value); });
}

jmap_status jmap_config_load(jmap_config* config, const char* path, const char* command) {
  if (!config || !path || !command) return fail(JMAP_ERR_ARGUMENT, "jmap_config_load: NULL argument");
  return guarded([&] { config->config.load_file(path, command); });
}

jmap_status jmap_run(const jmap_config* config, const char* command, jmap_result** out) {
  if (!config || !command || !out) return fail(JMAP_ERR_ARGUMENT, "jmap_run: NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto result = std::make_unique<jmap_result>();
    result->result = jmap::run_command(command, config->config);
    *out = result.release();
  });
}

void jmap_result_free(jmap_result* result) { delete result; }

const char* jmap_result_summary(const jmap_result* result) {
  return result ? result->result.summary.c_str() : nullptr;
}

const char* jmap_result_manifest(const jmap_result* result) {
  return result ? result->result.manifest.c_str() : nullptr;
}

size_t jmap_result_warning_count(const jmap_result* result) { return result ? result->result.warnings.size() : 0; }

const char* jmap_result_warning(const jmap_result* result, size_t index) {
  if (!result || index >= result->result.warnings.size()) return nullptr;
  return result->result.warnings[index].c_str();
}

double jmap_gestalt_similarity(const char* a, const char* b) {
  return jmap::gestalt_similarity(a ? a : "", b ? b : "");
}

double jmap_density(uint64_t n, uint64_t links) { return jmap::density(n, links); }

}  // extern "C"
