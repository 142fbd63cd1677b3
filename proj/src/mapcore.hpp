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

// Base-map construction: cosine similarity of citing profiles, thresholding,
// giant component, Louvain clustering, stress-majorization layout, and the
// tab-delimited map file read by VOSviewer.

#pragma once

#include "errors.hpp"
#include "ingest.hpp"
#include "network.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jmap {

struct SimilarityEdge {
  NodeId i = 0;  // i < j
  NodeId j = 0;
  double value = 0;  // in (0, 1]

  friend bool operator==(const SimilarityEdge&, const SimilarityEdge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0;
};

/// Undirected weighted similarity graph stored as its upper triangle.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  /// Orients each edge as i < j and sorts. Throws ContractError on self
  /// edges, duplicates, out-of-range ids or values outside (0, 1].
  SimilarityGraph(std::size_t n, std::vector<SimilarityEdge> edges, double threshold_applied = 0.0);

  std::size_t size() const noexcept { return n_; }
  const std::vector<SimilarityEdge>& edges() const noexcept { return edges_; }
  double threshold_applied() const noexcept { return threshold_; }

  /// Nodes whose citing vector was zero when the graph was built.
  const std::vector<NodeId>& zero_vector_nodes() const noexcept { return zero_nodes_; }
  void set_zero_vector_nodes(std::vector<NodeId> nodes) { zero_nodes_ = std::move(nodes); }

  /// Neighbor lists sorted by node id.
  std::vector<std::vector<Neighbor>> adjacency() const;
  std::optional<double> value(NodeId a, NodeId b) const;

  friend bool operator==(const SimilarityGraph&, const SimilarityGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<SimilarityEdge> edges_;
  double threshold_ = 0;
  std::vector<NodeId> zero_nodes_;
};

struct CosineOptions {
  bool include_self_citations = false;
};

/// Cosine between the citing rows of every pair of journals with a nonzero
/// dot product.
SimilarityGraph cosine_similarity_graph(const CitationNetwork& network, const CosineOptions& options = {});

/// Keeps edges with value > t (strict); 0 <= t < 1.
SimilarityGraph apply_cosine_threshold(const SimilarityGraph& graph, double t);

struct Component {
  std::vector<NodeId> nodes;  // ascending
  double share = 0;           // |nodes| / n
};

/// Largest connected component; ties go to the component holding the
/// smallest node id.
Component giant_component(const SimilarityGraph& graph);

struct SimilaritySubgraph {
  SimilarityGraph graph;
  std::vector<NodeId> original_ids;  // new id -> parent id, ascending
};
SimilaritySubgraph induced_subgraph(const SimilarityGraph& graph, std::span<const NodeId> nodes);

/// Newman modularity with resolution gamma on the weighted undirected graph.
/// Throws ContractError when the graph has no edge weight.
double modularity(const SimilarityGraph& graph, std::span<const std::uint32_t> assignment, double resolution = 1.0);

struct ClusteringResult {
  std::vector<std::uint32_t> assignment;  // dense ids, numbered by smallest member
  double q = 0;
  std::size_t n_clusters = 0;
  std::vector<double> pass_q;  // modularity after each aggregation pass, starting with singletons
};

/// Louvain (Blondel et al.) local moving + aggregation. Node visit order is
/// shuffled with a generator seeded by `seed`.
ClusteringResult louvain_cluster(const SimilarityGraph& graph, double resolution, std::uint64_t seed,
                                 Diagnostics* diag = nullptr);

struct Point {
  double x = 0;
  double y = 0;
};

struct LayoutConfig {
  std::uint64_t seed = 1;
  std::size_t max_iter = 500;
  double tolerance = 1e-6;  // stop when the relative stress decrease drops below this
};

struct LayoutResult {
  std::vector<Point> coords;
  std::vector<double> stress_history;  // initial stress, then one value per accepted step
  std::size_t iterations = 0;
  std::size_t rejected_steps = 0;  // steps discarded because stress went up (rounding)
  bool converged = false;
};

/// Sum over edges of w (|p_i - p_j| - d)^2 with w = cosine, d = 1 - cosine.
double layout_stress(const SimilarityGraph& graph, std::span<const Point> coords);

/// Stress majorization from a seeded random start, then centred with the
/// first principal axis on x. Throws ContractError for disconnected input.
LayoutResult layout(const SimilarityGraph& graph, const LayoutConfig& config = {});

/// Counter-clockwise rotation followed by optional mirroring; re-centres.
void orient(std::vector<Point>& coords, double rotate_degrees, bool flip_x, bool flip_y);

enum class JournalStatus { unknown, shared, unique };

struct MapNode {
  std::int64_t id = 0;
  std::string label;
  std::string abbrev;
  double x = 0;
  double y = 0;
  std::uint32_t cluster = 0;  // 0-based in memory, 1-based in map files
  double weight = 0;
  JournalStatus status = JournalStatus::unknown;
};

/// Fixed journal positions plus a lookup over normalized full and abbreviated
/// titles.
class BaseMap {
 public:
  BaseMap() = default;
  /// Throws ContractError on duplicate ids or non-finite coordinates.
  explicit BaseMap(std::vector<MapNode> nodes);

  const std::vector<MapNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const MapNode& at(std::size_t i) const { return nodes_.at(i); }

  std::optional<std::size_t> position_of(std::int64_t id) const;
  /// Exact normalized lookup, full titles first, then abbreviations.
  std::optional<std::size_t> find(std::string_view title) const;

  /// Fills empty abbreviations from the registry (matched by id) and rebuilds
  /// the lookup.
  void attach_abbreviations(const JournalRegistry& registry);
  void set_status(std::size_t i, JournalStatus status) { nodes_.at(i).status = status; }
  void set_weight(std::size_t i, double weight) { nodes_.at(i).weight = weight; }

 private:
  void rebuild();
  std::vector<MapNode> nodes_;
  std::map<std::int64_t, std::size_t> ids_;
  std::map<std::string, std::size_t> full_;
  std::map<std::string, std::size_t> abbrev_;
};

struct OutlierOptions {
  std::vector<std::int64_t> manual_ids;
  bool automatic = false;
  double factor = 10.0;  // automatic: drop nodes beyond factor * median centroid distance
};

struct OutlierResult {
  BaseMap map;
  std::vector<ReportEntry> removed;
};

/// Removes the listed and (optionally) far-away nodes, then re-centres.
OutlierResult exclude_outliers(const BaseMap& map, const OutlierOptions& options, Diagnostics* diag = nullptr);

/// Header `id\tlabel\tx\ty\tcluster\tweight`; coordinates and weights with six
/// decimals. Tabs and line breaks in labels become single spaces.
std::string write_map_file(const BaseMap& map, Diagnostics* diag = nullptr);
BaseMap read_map_file(std::string_view text);

/// `source,target,cosine` keyed by journal ids, values in round-trip precision.
std::string write_cosine_csv(const SimilarityGraph& graph, std::span<const std::int64_t> ids);
/// Re-indexes the pairs onto the map's node order; unknown ids are skipped.
SimilarityGraph read_cosine_csv(std::string_view text, const BaseMap& map, Diagnostics* diag = nullptr);

}  // namespace jmap
