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
#include "mapcore.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace jmap {

/// Documents per base-map node, plus the titles that did not resolve.
struct OverlayCounts {
  std::vector<std::uint64_t> counts;  // aligned with the base map's node order
  std::map<std::string, std::uint64_t> unresolved;
  std::uint64_t total_documents = 0;
  std::vector<ReportEntry> resolution_log;  // registry-alias and fuzzy resolutions

  std::uint64_t resolved_documents() const noexcept;
};

struct ResolveOptions {
  bool fuzzy = false;
  double fuzzy_threshold = 0.90;
};

/// Exact normalized lookup on the map's full titles, then abbreviations, then
/// (when a registry is given) registry titles and aliases mapped back by id.
/// The optional fuzzy fallback picks the best gestalt score over all labels.
OverlayCounts resolve_document_set(const DocumentSet& docs, const BaseMap& basemap,
                                   const JournalRegistry* registry = nullptr, const ResolveOptions& options = {});

/// Base coordinates and clusters with node weight ln(1 + count).
BaseMap build_overlay(const OverlayCounts& counts, const BaseMap& basemap);

struct DiversityReport {
  double delta = 0;
  std::vector<NodeId> nodes;  // map positions with nonzero counts
  std::vector<double> p;      // proportions, parallel to `nodes`
  std::string distance_source;
};

/// Rao-Stirling diversity over ordered pairs i != j with d = 1 - cosine; a
/// pair without a similarity edge has d = 1. `similarity` must be indexed by
/// map position. Throws ContractError when no document is resolved.
DiversityReport rao_stirling(std::span<const std::uint64_t> counts, const SimilarityGraph& similarity,
                             std::string distance_source);

/// Rao-Stirling value as written to rao.txt.
std::string format_rao(double delta);
double parse_rao(std::string_view text);

/// overlay_journals.csv: journal,count,weight,cluster for nonzero counts.
std::string write_overlay_csv(const BaseMap& overlay, const OverlayCounts& counts);

struct OverlayFiles {
  std::vector<std::filesystem::path> written;
};

/// Writes overlay.txt (when `with_map`), rao.txt, overlay_journals.csv and
/// unresolved.csv into `dir`, creating it if needed.
OverlayFiles write_overlay_outputs(const BaseMap& overlay, const OverlayCounts& counts, const DiversityReport& report,
                                   const std::filesystem::path& dir, bool with_map = true,
                                   Diagnostics* diag = nullptr);

}  // namespace jmap
