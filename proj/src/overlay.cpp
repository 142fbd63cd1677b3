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

#include "overlay.hpp"

#include "match.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <system_error>

namespace jmap {

std::uint64_t OverlayCounts::resolved_documents() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

namespace {

std::optional<std::size_t> via_registry(std::string_view title, const BaseMap& basemap,
                                        const JournalRegistry& registry) {
  const auto positions = registry.positions_for_title(title);
  std::optional<std::size_t> hit;
  for (auto p : positions) {
    auto on_map = basemap.position_of(registry.at(p).id);
    if (!on_map) continue;
    if (hit && *hit != *on_map) return std::nullopt;  // ambiguous
    hit = on_map;
  }
  return hit;
}

struct FuzzyHit {
  std::size_t position = 0;
  double score = -1;
};

FuzzyHit best_fuzzy(const std::string& key, const BaseMap& basemap) {
  FuzzyHit best;
  for (std::size_t i = 0; i < basemap.size(); ++i) {
    const auto& node = basemap.at(i);
    for (const auto* label : {&node.label, &node.abbrev}) {
      if (label->empty()) continue;
      const double s = gestalt_similarity(key, normalize_title(*label));
      if (s > best.score) best = {i, s};
    }
  }
  return best;
}

}  // namespace

OverlayCounts resolve_document_set(const DocumentSet& docs, const BaseMap& basemap, const JournalRegistry* registry,
                                   const ResolveOptions& options) {
  if (options.fuzzy && !(options.fuzzy_threshold >= 0 && options.fuzzy_threshold <= 1))
    throw ContractError("fuzzy resolve threshold must lie in [0, 1]");
  OverlayCounts out;
  out.counts.assign(basemap.size(), 0);
  for (const auto& [title, count] : docs.entries) {
    out.total_documents += count;
    auto hit = basemap.find(title);
    if (!hit && registry) {
      hit = via_registry(title, basemap, *registry);
      if (hit) out.resolution_log.push_back({"registry_title", title, basemap.at(*hit).label});
    }
    if (!hit && options.fuzzy && basemap.size() > 0) {
      const auto best = best_fuzzy(normalize_title(title), basemap);
      if (best.score >= options.fuzzy_threshold) {
        hit = best.position;
        out.resolution_log.push_back(
            {"fuzzy", title, basemap.at(best.position).label + " (" + format_fixed(best.score, 6) + ")"});
      }
    }
    if (hit)
      out.counts[*hit] += count;
    else
      out.unresolved[title] += count;
  }
  return out;
}

BaseMap build_overlay(const OverlayCounts& counts, const BaseMap& basemap) {
  if (counts.counts.size() != basemap.size()) throw ContractError("overlay counts do not match the base map");
  auto nodes = basemap.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].weight = std::log1p(static_cast<double>(counts.counts[i]));
  return BaseMap(std::move(nodes));
}

DiversityReport rao_stirling(std::span<const std::uint64_t> counts, const SimilarityGraph& similarity,
                             std::string distance_source) {
  if (counts.size() != similarity.size()) throw ContractError("rao_stirling: counts and similarity graph differ in size");
  DiversityReport report;
  report.distance_source = std::move(distance_source);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    report.nodes.push_back(static_cast<NodeId>(i));
    total += counts[i];
  }
  if (total == 0) throw ContractError("rao_stirling: no resolved documents");
  for (auto v : report.nodes) report.p.push_back(static_cast<double>(counts[v]) / static_cast<double>(total));

  double delta = 0;
  for (std::size_t a = 0; a < report.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < report.nodes.size(); ++b) {
      const double d = 1.0 - similarity.value(report.nodes[a], report.nodes[b]).value_or(0.0);
      delta += report.p[a] * report.p[b] * d;
    }
  }
  report.delta = std::clamp(2.0 * delta, 0.0, 1.0);
  return report;
}

std::string format_rao(double delta) { return format_fixed(delta, 6) + "\n"; }

double parse_rao(std::string_view text) {
  auto v = parse_double(trim(text));
  if (!v) throw ParseError("rao.txt", 1, "expected a single decimal value");
  return *v;
}

std::string write_overlay_csv(const BaseMap& overlay, const OverlayCounts& counts) {
  std::string out = csv_line({"journal", "count", "weight", "cluster"});
  for (std::size_t i = 0; i < overlay.size(); ++i) {
    if (counts.counts.at(i) == 0) continue;
    const auto& n = overlay.at(i);
    out += csv_line({n.label, std::to_string(counts.counts[i]), format_fixed(n.weight, 6),
                     std::to_string(n.cluster + 1)});
  }
  return out;
}

OverlayFiles write_overlay_outputs(const BaseMap& overlay, const OverlayCounts& counts, const DiversityReport& report,
                                   const std::filesystem::path& dir, bool with_map, Diagnostics* diag) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  OverlayFiles files;
  auto emit = [&](const char* name, const std::string& content) {
    write_file(dir / name, content);
    files.written.push_back(dir / name);
  };
  if (with_map) emit("overlay.txt", write_map_file(overlay, diag));
  emit("rao.txt", format_rao(report.delta));
  emit("overlay_journals.csv", write_overlay_csv(overlay, counts));

  std::string unresolved = csv_line({"journal", "count"});
  for (const auto& [title, count] : counts.unresolved) unresolved += csv_line({title, std::to_string(count)});
  emit("unresolved.csv", unresolved);
  return files;
}

}  // namespace jmap
