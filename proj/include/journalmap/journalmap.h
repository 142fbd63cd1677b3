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

/* C interface to journalmap. All strings are UTF-8 and NUL-terminated.
 * Strings returned by the library stay valid until the owning handle is
 * freed; jmap_last_error() stays valid until the next call on the same
 * thread. */

#ifndef JOURNALMAP_JOURNALMAP_H
#define JOURNALMAP_JOURNALMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(JMAP_BUILDING)
#define JMAP_API __declspec(dllexport)
#else
#define JMAP_API __declspec(dllimport)
#endif
#else
#define JMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the jmap tool. */
typedef enum jmap_status {
  JMAP_OK = 0,
  JMAP_ERR_PARSE = 2,    /* malformed input file */
  JMAP_ERR_CONTRACT = 3, /* inputs violate an operation's preconditions */
  JMAP_ERR_IO = 4,       /* file cannot be read or written */
  JMAP_ERR_CONFIG = 5,   /* unknown key, bad value or missing setting */
  JMAP_ERR_INTERNAL = 6,
  JMAP_ERR_ARGUMENT = 7  /* NULL handle or out-pointer */
} jmap_status;

typedef enum jmap_key_kind {
  JMAP_KEY_PATH = 0,
  JMAP_KEY_TEXT = 1,
  JMAP_KEY_REAL = 2,
  JMAP_KEY_INTEGER = 3,
  JMAP_KEY_FLAG = 4,
  JMAP_KEY_ID_LIST = 5
} jmap_key_kind;

typedef struct jmap_config jmap_config;
typedef struct jmap_result jmap_result;

JMAP_API const char* jmap_version(void);
JMAP_API const char* jmap_last_error(void);

/* Configuration keys, in a stable order. */
JMAP_API size_t jmap_config_key_count(void);
JMAP_API const char* jmap_config_key_name(size_t index);
JMAP_API jmap_key_kind jmap_config_key_kind(size_t index);
JMAP_API const char* jmap_config_key_default(size_t index);
JMAP_API const char* jmap_config_key_help(size_t index);

/* Commands accepted by jmap_run, in pipeline order. */
JMAP_API size_t jmap_command_count(void);
JMAP_API const char* jmap_command_name(size_t index);

JMAP_API jmap_status jmap_config_new(jmap_config** out);
JMAP_API void jmap_config_free(jmap_config* config);
JMAP_API jmap_status jmap_config_set(jmap_config* config, const char* key, const char* value);
/* Applies top-level keys and the [command] section of an INI file. */
JMAP_API jmap_status jmap_config_load(jmap_config* config, const char* path, const char* command);

/* Runs ingest, match, stats, basemap, overlay or diversity. On success *out
 * receives a result handle; on failure *out is NULL and jmap_last_error()
 * describes the problem. */
JMAP_API jmap_status jmap_run(const jmap_config* config, const char* command, jmap_result** out);
JMAP_API void jmap_result_free(jmap_result* result);
JMAP_API const char* jmap_result_summary(const jmap_result* result);
JMAP_API const char* jmap_result_manifest(const jmap_result* result);
JMAP_API size_t jmap_result_warning_count(const jmap_result* result);
JMAP_API const char* jmap_result_warning(const jmap_result* result, size_t index);

/* Ratcliff/Obershelp similarity of two strings, in [0, 1]. */
JMAP_API double jmap_gestalt_similarity(const char* a, const char* b);
/* L / (n (n - 1)). */
JMAP_API double jmap_density(uint64_t n, uint64_t links);

#ifdef __cplusplus
}
#endif

#endif /* JOURNALMAP_JOURNALMAP_H */
