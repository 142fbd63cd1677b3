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

// Text helpers shared by every parser and writer: title normalization, ISSN
// cleaning, locale-independent number formatting, RFC-4180 CSV, file I/O and
// content digests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jmap {

/// Canonical form used by every title index: ASCII uppercase, "&" spelled as
/// "AND", whitespace collapsed, a leading "THE " and trailing punctuation
/// removed.
std::string normalize_title(std::string_view title);

/// "All others" residual category of journal citation reports, in any casing.
bool is_all_others(std::string_view name);

/// Returns "NNNN-NNNC" or nullopt when the input does not clean to 8 valid
/// characters (seven digits and a digit or 'X').
std::optional<std::string> clean_issn(std::string_view raw);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delimiter);
std::string strip_bom(std::string_view s);

std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

/// Fixed-point rendering that never prints a negative zero.
std::string format_fixed(double value, int decimals);
/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

struct CsvRow {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

/// RFC-4180 reader: quoted fields may contain delimiters, doubled quotes and
/// line breaks. Blank records are skipped.
std::vector<CsvRow> read_csv(std::string_view text, char delimiter = ',');

std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);

}  // namespace jmap
