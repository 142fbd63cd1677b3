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

#include "errors.hpp"
#include "ingest.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jmap {

/// Number of characters matched by Ratcliff/Obershelp gestalt matching: the
/// longest common substring (leftmost in `a`, then leftmost in `b`) plus the
/// matches found recursively to its left and right.
std::size_t gestalt_matched_chars(std::string_view a, std::string_view b);

/// 2 M / (|a| + |b|); two empty strings compare as 1.
double gestalt_similarity(std::string_view a, std::string_view b);

/// Print/electronic ISSN equivalences supplied as data.
class IssnVariants {
 public:
  void link(const std::string& issn_1, const std::string& issn_2);
  /// True when the sets share an ISSN or any pair is linked by the table.
  bool linked(const std::vector<std::string>& a, const std::vector<std::string>& b) const;
  std::size_t size() const noexcept { return pairs_; }

 private:
  std::string root(const std::string& issn) const;
  std::map<std::string, std::string> parent_;
  std::size_t pairs_ = 0;
};

/// CSV with header `issn_1,issn_2`.
IssnVariants parse_issn_variants(std::string_view text, Diagnostics* diag = nullptr);

enum class MatchMethod { issn, exact_title, fuzzy_confirmed, candidate_review };

std::string to_string(MatchMethod method);
std::optional<MatchMethod> match_method_from_string(std::string_view name);

struct MatchEntry {
  std::int64_t id_a = 0;
  std::int64_t id_b = 0;
  MatchMethod method = MatchMethod::issn;
  double similarity = 1.0;
  std::string note;  // why a candidate was held back; empty for matches

  friend bool operator==(const MatchEntry&, const MatchEntry&) = default;
};

/// Cross-database identity mapping. Non-candidate entries form a partial
/// one-to-one map; candidate_review entries are surfaced for human review
/// and never count as matches.
struct MatchTable {
  std::vector<MatchEntry> entries;  // matches in stage order, then review candidates
  std::vector<std::int64_t> unmatched_a;
  std::vector<std::int64_t> unmatched_b;
  std::map<MatchMethod, std::size_t> stage_counts;

  std::vector<MatchEntry> matches() const;
  std::vector<MatchEntry> candidates() const;
};

struct MatchOptions {
  double fuzzy_threshold = 0.90;
  const IssnVariants* variants = nullptr;
};

/// Stage 1 matches shared ISSNs, stage 2 identical normalized titles, stage 3
/// gestalt similarity above the threshold with ISSN corroboration, scanning
/// the larger registry against the smaller. Each stage only sees journals left
/// unmatched by earlier ones.
MatchTable build_match_table(const JournalRegistry& a, const JournalRegistry& b, const MatchOptions& options = {});

/// Columns status,title_a,abbrev_a,issns_a,title_b,abbrev_b,issns_b,method,
/// similarity,id_a,id_b; rows sorted by status, then title.
std::string export_match_csv(const MatchTable& table, const JournalRegistry& a, const JournalRegistry& b);
/// Review candidates: id_a,title_a,id_b,title_b,similarity,reason.
std::string export_review_csv(const MatchTable& table, const JournalRegistry& a, const JournalRegistry& b);

struct MatchCsvRow {
  std::string status;
  std::string title_a, abbrev_a, issns_a;
  std::string title_b, abbrev_b, issns_b;
  std::optional<MatchMethod> method;
  std::optional<double> similarity;
  std::optional<std::int64_t> id_a, id_b;
};

std::vector<MatchCsvRow> parse_match_csv(std::string_view text);
std::map<MatchMethod, std::size_t> stage_counts_from(const std::vector<MatchCsvRow>& rows);

}  // namespace jmap
