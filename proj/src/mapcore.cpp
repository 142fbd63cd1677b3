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

#include "mapcore.hpp"

#include "random.hpp"
#include "text.hpp"
#include "union_find.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace jmap {

// --- similarity graph ------------------------------------------------------

SimilarityGraph::SimilarityGraph(std::size_t n, std::vector<SimilarityEdge> edges, double threshold_applied)
    : n_(n), edges_(std::move(edges)), threshold_(threshold_applied) {
  for (auto& e : edges_) {
    if (e.i == e.j) throw ContractError("similarity graph: self edge at node " + std::to_string(e.i));
    if (e.i >= n || e.j >= n) throw ContractError("similarity graph: node id out of range");
    if (!(e.value > 0.0 && e.value <= 1.0)) throw ContractError("similarity graph: value outside (0, 1]");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const SimilarityEdge& a, const SimilarityEdge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
      throw ContractError("similarity graph: duplicate edge");
}

std::vector<std::vector<Neighbor>> SimilarityGraph::adjacency() const {
  std::vector<std::vector<Neighbor>> adj(n_);
  for (const auto& e : edges_) {
    adj[e.i].push_back({e.j, e.value});
    adj[e.j].push_back({e.i, e.value});
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  return adj;
}

std::optional<double> SimilarityGraph::value(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b}, [](const SimilarityEdge& e, const auto& key) {
    return std::tie(e.i, e.j) < std::tie(key.first, key.second);
  });
  if (it == edges_.end() || it->i != a || it->j != b) return std::nullopt;
  return it->value;
}

SimilarityGraph cosine_similarity_graph(const CitationNetwork& network, const CosineOptions& options) {
  const std::size_t n = network.size();
  // Rows are citing vectors; columns let us find every other row that shares
  // a cited journal.
  std::vector<std::vector<std::pair<NodeId, std::uint64_t>>> rows(n), columns(n);
  std::vector<std::uint64_t> norm2(n, 0);
  for (const auto& e : network.edges()) {
    if (e.citing == e.cited && !options.include_self_citations) continue;
    rows[e.citing].emplace_back(e.cited, e.count);
    columns[e.cited].emplace_back(e.citing, e.count);
    norm2[e.citing] += e.count * e.count;
  }

  std::vector<SimilarityEdge> edges;
  std::vector<NodeId> zero_nodes;
  std::vector<std::uint64_t> dot(n, 0);
  std::vector<NodeId> touched;
  for (NodeId i = 0; i < n; ++i) {
    if (norm2[i] == 0) {
      zero_nodes.push_back(i);
      continue;
    }
    touched.clear();
    for (const auto& [k, w] : rows[i]) {
      for (const auto& [j, wj] : columns[k]) {
        if (j <= i) continue;
        if (dot[j] == 0) touched.push_back(j);
        dot[j] += w * wj;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      const double denom = std::sqrt(static_cast<double>(norm2[i]) * static_cast<double>(norm2[j]));
      const double c = std::min(1.0, static_cast<double>(dot[j]) / denom);
      edges.push_back({i, j, c});
      dot[j] = 0;
    }
  }
  SimilarityGraph graph(n, std::move(edges), 0.0);
  graph.set_zero_vector_nodes(std::move(zero_nodes));
  return graph;
}

SimilarityGraph apply_cosine_threshold(const SimilarityGraph& graph, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw ContractError("cosine threshold must satisfy 0 <= t < 1");
  std::vector<SimilarityEdge> kept;
  for (const auto& e : graph.edges())
    if (e.value > t) kept.push_back(e);
  SimilarityGraph out(graph.size(), std::move(kept), t);
  out.set_zero_vector_nodes(graph.zero_vector_nodes());
  return out;
}

Component giant_component(const SimilarityGraph& graph) {
  Component out;
  const auto n = graph.size();
  if (n == 0) return out;
  DisjointSets sets(n);
  for (const auto& e : graph.edges()) sets.unite(e.i, e.j);
  std::vector<std::size_t> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size[sets.find(v)];
  // Roots are the smallest members, so the first maximum wins ties.
  std::size_t best = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (size[v] > size[best]) best = v;
  for (std::size_t v = 0; v < n; ++v)
    if (sets.find(v) == best) out.nodes.push_back(static_cast<NodeId>(v));
  out.share = static_cast<double>(out.nodes.size()) / static_cast<double>(n);
  return out;
}

SimilaritySubgraph induced_subgraph(const SimilarityGraph& graph, std::span<const NodeId> nodes) {
  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(graph.size(), absent);
  for (auto v : nodes) {
    if (v >= graph.size()) throw ContractError("induced_subgraph: node id out of range");
    remap[v] = 0;
  }
  SimilaritySubgraph out;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (remap[v] == absent) continue;
    remap[v] = static_cast<NodeId>(out.original_ids.size());
    out.original_ids.push_back(static_cast<NodeId>(v));
  }
  std::vector<SimilarityEdge> edges;
  for (const auto& e : graph.edges())
    if (remap[e.i] != absent && remap[e.j] != absent) edges.push_back({remap[e.i], remap[e.j], e.value});
  out.graph = SimilarityGraph(out.original_ids.size(), std::move(edges), graph.threshold_applied());
  std::vector<NodeId> zero;
  for (auto z : graph.zero_vector_nodes())
    if (remap[z] != absent) zero.push_back(remap[z]);
  out.graph.set_zero_vector_nodes(std::move(zero));
  return out;
}

// --- modularity and Louvain -------------------------------------------------

double modularity(const SimilarityGraph& graph, std::span<const std::uint32_t> assignment, double resolution) {
  const auto n = graph.size();
  if (assignment.size() != n) throw ContractError("modularity: assignment does not cover every node");
  std::vector<double> strength(n, 0.0);
  double m = 0;
  for (const auto& e : graph.edges()) {
    strength[e.i] += e.value;
    strength[e.j] += e.value;
    m += e.value;
  }
  if (m <= 0) throw ContractError("modularity undefined for a graph without edges");

  std::uint32_t clusters = 0;
  for (auto c : assignment) clusters = std::max(clusters, c + 1);
  std::vector<double> internal(clusters, 0.0), total(clusters, 0.0);
  for (const auto& e : graph.edges())
    if (assignment[e.i] == assignment[e.j]) internal[assignment[e.i]] += 2.0 * e.value;
  for (std::size_t v = 0; v < n; ++v) total[assignment[v]] += strength[v];

  const double two_m = 2.0 * m;
  double q = 0;
  for (std::uint32_t c = 0; c < clusters; ++c) {
    const double share = total[c] / two_m;
    q += internal[c] / two_m - resolution * share * share;
  }
  return q;
}

namespace {

// Weighted graph used inside Louvain. `self[v]` holds A_vv, i.e. twice the
// internal edge weight of an aggregated community.
struct LouvainGraph {
  std::vector<std::vector<Neighbor>> adj;
  std::vector<double> self;
  std::vector<double> strength;
  double two_m = 0;

  std::size_t size() const noexcept { return adj.size(); }
};

LouvainGraph from_similarity(const SimilarityGraph& graph) {
  LouvainGraph g;
  g.adj = graph.adjacency();
  g.self.assign(graph.size(), 0.0);
  g.strength.assign(graph.size(), 0.0);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (const auto& nb : g.adj[v]) g.strength[v] += nb.weight;
  g.two_m = std::accumulate(g.strength.begin(), g.strength.end(), 0.0);
  return g;
}

// Moves nodes between communities until no single move gains modularity.
bool local_moving(const LouvainGraph& g, std::vector<std::uint32_t>& community, double resolution, Rng& rng) {
  constexpr double min_gain = 1e-10;
  const auto n = g.size();
  std::vector<double> total(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) total[community[v]] += g.strength[v];

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<double> link_to(n, 0.0);
  std::vector<std::uint32_t> seen;
  bool moved_any = false;
  for (std::size_t sweep = 0; sweep < 1000; ++sweep) {
    bool moved = false;
    for (auto v : order) {
      const auto home = community[v];
      const double k = g.strength[v];
      seen.clear();
      seen.push_back(home);
      for (const auto& nb : g.adj[v]) {
        const auto c = community[nb.node];
        if (link_to[c] == 0.0 && c != home &&
            std::find(seen.begin(), seen.end(), c) == seen.end())
          seen.push_back(c);
        link_to[c] += nb.weight;
      }
      total[home] -= k;
      auto best = home;
      double best_gain = link_to[home] - resolution * total[home] * k / g.two_m;
      for (auto c : seen) {
        const double gain = link_to[c] - resolution * total[c] * k / g.two_m;
        if (gain > best_gain + min_gain) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += k;
      community[v] = best;
      for (auto c : seen) link_to[c] = 0.0;
      if (best != home) moved = true;
    }
    if (!moved) break;
    moved_any = true;
  }
  return moved_any;
}

// Renumbers communities 0..k-1 by first appearance in node order.
std::uint32_t renumber(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> id(community.size(), static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (id[c] == static_cast<std::uint32_t>(-1)) id[c] = next++;
    c = id[c];
  }
  return next;
}

LouvainGraph aggregate(const LouvainGraph& g, const std::vector<std::uint32_t>& community, std::uint32_t k) {
  LouvainGraph out;
  out.adj.assign(k, {});
  out.self.assign(k, 0.0);
  out.strength.assign(k, 0.0);
  std::vector<std::map<std::uint32_t, double>> links(k);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto cv = community[v];
    out.self[cv] += g.self[v];
    out.strength[cv] += g.strength[v];
    for (const auto& nb : g.adj[v]) {
      const auto cu = community[nb.node];
      if (cu == cv)
        out.self[cv] += nb.weight;
      else
        links[cv][cu] += nb.weight;
    }
  }
  for (std::uint32_t c = 0; c < k; ++c)
    for (const auto& [d, w] : links[c]) out.adj[c].push_back({d, w});
  out.two_m = g.two_m;
  return out;
}

}  // namespace

ClusteringResult louvain_cluster(const SimilarityGraph& graph, double resolution, std::uint64_t seed,
                                 Diagnostics* diag) {
  if (graph.size() == 0) throw ContractError("louvain_cluster: empty graph");
  if (!(resolution > 0)) throw ContractError("louvain_cluster: resolution must be positive");

  ClusteringResult result;
  result.assignment.resize(graph.size());
  std::iota(result.assignment.begin(), result.assignment.end(), 0);

  if (graph.edges().empty()) {
    warn(diag, "louvain_cluster: graph has no edges; every node is its own cluster");
    result.n_clusters = graph.size();
    return result;
  }

  Rng rng(seed);
  result.pass_q.push_back(modularity(graph, result.assignment, resolution));
  LouvainGraph level = from_similarity(graph);
  for (;;) {
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0);
    if (!local_moving(level, community, resolution, rng)) break;
    const auto k = renumber(community);
    for (auto& c : result.assignment) c = community[c];
    result.pass_q.push_back(modularity(graph, result.assignment, resolution));
    if (k == level.size() || k == 1) break;
    level = aggregate(level, community, k);
  }

  result.n_clusters = renumber(result.assignment);
  result.q = modularity(graph, result.assignment, resolution);
  return result;
}

// --- layout ----------------------------------------------------------------

double layout_stress(const SimilarityGraph& graph, std::span<const Point> coords) {
  double s = 0;
  for (const auto& e : graph.edges()) {
    const double dx = coords[e.i].x - coords[e.j].x;
    const double dy = coords[e.i].y - coords[e.j].y;
    const double r = std::hypot(dx, dy) - (1.0 - e.value);
    s += e.value * r * r;
  }
  return s;
}

namespace {

void center(std::vector<Point>& p) {
  if (p.empty()) return;
  double cx = 0, cy = 0;
  for (const auto& q : p) {
    cx += q.x;
    cy += q.y;
  }
  cx /= static_cast<double>(p.size());
  cy /= static_cast<double>(p.size());
  for (auto& q : p) {
    q.x -= cx;
    q.y -= cy;
  }
}

// y = L_w x for the weighted graph Laplacian.
void laplacian_apply(const std::vector<std::vector<Neighbor>>& adj, const std::vector<double>& x,
                     std::vector<double>& y) {
  for (std::size_t i = 0; i < adj.size(); ++i) {
    double acc = 0;
    for (const auto& nb : adj[i]) acc += nb.weight * (x[i] - x[nb.node]);
    y[i] = acc;
  }
}

// Conjugate gradients on L_w z = rhs, warm-started at z. Every CG iterate
// lowers the quadratic majorizer, so stress cannot rise even when the solve
// stops early.
void solve_laplacian(const std::vector<std::vector<Neighbor>>& adj, const std::vector<double>& rhs,
                     std::vector<double>& z) {
  const std::size_t n = adj.size();
  std::vector<double> r(n), p(n), ap(n);
  laplacian_apply(adj, z, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
  p = r;
  double rr = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
  const double rhs_norm = std::sqrt(std::inner_product(rhs.begin(), rhs.end(), rhs.begin(), 0.0));
  const double stop = 1e-12 * std::max(rhs_norm, 1e-300);
  for (std::size_t it = 0; it < 4 * n + 50 && std::sqrt(rr) > stop; ++it) {
    laplacian_apply(adj, p, ap);
    const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (!(pap > 0)) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
}

void canonical_rotation(std::vector<Point>& p) {
  center(p);
  double sxx = 0, syy = 0, sxy = 0;
  for (const auto& q : p) {
    sxx += q.x * q.x;
    syy += q.y * q.y;
    sxy += q.x * q.y;
  }
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double c = std::cos(-theta), s = std::sin(-theta);
  double scale = 0;
  for (auto& q : p) {
    const double x = c * q.x - s * q.y;
    const double y = s * q.x + c * q.y;
    q = {x, y};
    scale = std::max({scale, std::abs(x), std::abs(y)});
  }
  // Fix the mirror ambiguity: the first node off each axis gets a positive sign.
  const double eps = 1e-9 * scale;
  for (const auto& q : p) {
    if (std::abs(q.x) > eps) {
      if (q.x < 0)
        for (auto& r : p) r.x = -r.x;
      break;
    }
  }
  for (const auto& q : p) {
    if (std::abs(q.y) > eps) {
      if (q.y < 0)
        for (auto& r : p) r.y = -r.y;
      break;
    }
  }
  center(p);
}

}  // namespace

LayoutResult layout(const SimilarityGraph& graph, const LayoutConfig& config) {
  LayoutResult result;
  const auto n = graph.size();
  if (n == 0) return result;
  if (n == 1) {
    result.coords = {{0.0, 0.0}};
    result.stress_history = {0.0};
    result.converged = true;
    return result;
  }
  if (giant_component(graph).nodes.size() != n)
    throw ContractError("layout needs a connected graph; extract the giant component first");

  Rng rng(config.seed);
  std::vector<Point> x(n);
  for (auto& p : x) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  center(x);

  const auto adj = graph.adjacency();
  double stress = layout_stress(graph, x);
  result.stress_history.push_back(stress);
  // Stress at this level is zero up to rounding (the graph embeds exactly).
  double scale = 0;
  for (const auto& e : graph.edges()) scale += e.value * (1.0 - e.value) * (1.0 - e.value);
  const double floor = std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> bx(n), by(n), zx(n), zy(n);
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    // Right-hand side B(X) X of the Guttman transform.
    for (std::size_t i = 0; i < n; ++i) {
      double ax = 0, ay = 0;
      for (const auto& nb : adj[i]) {
        const double dx = x[i].x - x[nb.node].x;
        const double dy = x[i].y - x[nb.node].y;
        const double dist = std::hypot(dx, dy);
        if (dist <= 0) continue;
        const double f = nb.weight * (1.0 - nb.weight) / dist;
        ax += f * dx;
        ay += f * dy;
      }
      bx[i] = ax;
      by[i] = ay;
      zx[i] = x[i].x;
      zy[i] = x[i].y;
    }
    solve_laplacian(adj, bx, zx);
    solve_laplacian(adj, by, zy);

    std::vector<Point> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = {zx[i], zy[i]};
    center(next);
    const double next_stress = layout_stress(graph, next);
    ++result.iterations;
    if (next_stress > stress) {
      ++result.rejected_steps;
      result.converged = true;
      break;
    }
    const double decrease = stress - next_stress;
    x = std::move(next);
    result.stress_history.push_back(next_stress);
    const bool done = next_stress <= floor || stress <= 0 || decrease / stress < config.tolerance;
    stress = next_stress;
    if (done) {
      result.converged = true;
      break;
    }
  }

  canonical_rotation(x);
  result.coords = std::move(x);
  return result;
}

void orient(std::vector<Point>& coords, double rotate_degrees, bool flip_x, bool flip_y) {
  const double a = rotate_degrees * std::acos(-1.0) / 180.0;
  const double c = std::cos(a), s = std::sin(a);
  for (auto& p : coords) {
    const double x = c * p.x - s * p.y;
    const double y = s * p.x + c * p.y;
    p = {flip_x ? -x : x, flip_y ? -y : y};
  }
  center(coords);
}

// --- base map --------------------------------------------------------------

BaseMap::BaseMap(std::vector<MapNode> nodes) : nodes_(std::move(nodes)) {
  for (const auto& n : nodes_)
    if (!std::isfinite(n.x) || !std::isfinite(n.y)) throw ContractError("map node with non-finite coordinates");
  rebuild();
}

void BaseMap::rebuild() {
  ids_.clear();
  full_.clear();
  abbrev_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!ids_.emplace(nodes_[i].id, i).second)
      throw ContractError("duplicate map node id " + std::to_string(nodes_[i].id));
    full_.emplace(normalize_title(nodes_[i].label), i);
    if (!nodes_[i].abbrev.empty()) abbrev_.emplace(normalize_title(nodes_[i].abbrev), i);
  }
}

std::optional<std::size_t> BaseMap::position_of(std::int64_t id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BaseMap::find(std::string_view title) const {
  const auto key = normalize_title(title);
  if (auto it = full_.find(key); it != full_.end()) return it->second;
  if (auto it = abbrev_.find(key); it != abbrev_.end()) return it->second;
  return std::nullopt;
}

void BaseMap::attach_abbreviations(const JournalRegistry& registry) {
  for (auto& n : nodes_) {
    if (!n.abbrev.empty()) continue;
    if (auto p = registry.position_of(n.id)) n.abbrev = registry.at(*p).abbrev_title;
  }
  rebuild();
}

OutlierResult exclude_outliers(const BaseMap& map, const OutlierOptions& options, Diagnostics* diag) {
  std::vector<bool> drop(map.size(), false);
  OutlierResult out;
  for (auto id : options.manual_ids) {
    if (auto p = map.position_of(id)) {
      if (!drop[*p]) out.removed.push_back({"manual", std::to_string(id), map.at(*p).label});
      drop[*p] = true;
    } else {
      warn(diag, "exclude_outliers: id " + std::to_string(id) + " not on the map");
    }
  }

  if (options.automatic && map.size() > 0) {
    double cx = 0, cy = 0;
    for (const auto& n : map.nodes()) {
      cx += n.x;
      cy += n.y;
    }
    cx /= static_cast<double>(map.size());
    cy /= static_cast<double>(map.size());
    std::vector<double> dist(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) dist[i] = std::hypot(map.at(i).x - cx, map.at(i).y - cy);
    auto sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    const auto mid = sorted.size() / 2;
    const double median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (!drop[i] && dist[i] > options.factor * median) {
        drop[i] = true;
        out.removed.push_back({"auto", std::to_string(map.at(i).id),
                               map.at(i).label + " at distance " + format_fixed(dist[i], 6) + " (median " +
                                   format_fixed(median, 6) + ")"});
      }
    }
  }

  std::vector<MapNode> kept;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (!drop[i]) kept.push_back(map.at(i));
  if (kept.empty() && map.size() > 0) throw ContractError("outlier exclusion would remove every node");

  std::vector<Point> pts;
  for (const auto& n : kept) pts.push_back({n.x, n.y});
  center(pts);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].x = pts[i].x;
    kept[i].y = pts[i].y;
  }
  out.map = BaseMap(std::move(kept));
  return out;
}

// --- map and cosine files --------------------------------------------------

std::string write_map_file(const BaseMap& map, Diagnostics* diag) {
  std::string out = "id\tlabel\tx\ty\tcluster\tweight\n";
  for (const auto& n : map.nodes()) {
    std::string label = n.label;
    if (label.find_first_of("\t\r\n") != std::string::npos) {
      for (auto& c : label)
        if (c == '\t' || c == '\r' || c == '\n') c = ' ';
      warn(diag, "map file: control characters in label of journal " + std::to_string(n.id) + " replaced by spaces");
    }
    out += std::to_string(n.id) + '\t' + label + '\t' + format_fixed(n.x, 6) + '\t' + format_fixed(n.y, 6) + '\t' +
           std::to_string(n.cluster + 1) + '\t' + format_fixed(n.weight, 6) + '\n';
  }
  return out;
}

BaseMap read_map_file(std::string_view text) {
  auto lines = split(strip_bom(text), '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (lines.empty() || trim(lines.front()).empty()) throw ParseError("map file", 1, "missing header");

  const auto header = split(lines.front(), '\t');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = i;
  for (const char* name : {"id", "label", "x", "y", "cluster", "weight"})
    if (!col.count(name)) throw ParseError("map file", 1, std::string("missing column '") + name + "'");

  std::vector<MapNode> nodes;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto f = split(lines[li], '\t');
    if (f.size() != header.size()) throw ParseError("map file", li + 1, "wrong number of columns");
    MapNode n;
    const auto id = parse_int(f[col["id"]]);
    const auto x = parse_double(f[col["x"]]);
    const auto y = parse_double(f[col["y"]]);
    const auto cluster = parse_int(f[col["cluster"]]);
    const auto weight = parse_double(f[col["weight"]]);
    if (!id || !x || !y || !cluster || !weight || *cluster < 1 || *weight < 0)
      throw ParseError("map file", li + 1, "malformed row");
    n.id = *id;
    n.label = f[col["label"]];
    n.x = *x;
    n.y = *y;
    n.cluster = static_cast<std::uint32_t>(*cluster - 1);
    n.weight = *weight;
    nodes.push_back(std::move(n));
  }
  try {
    return BaseMap(std::move(nodes));
  } catch (const ContractError& e) {
    throw ParseError("map file", 0, e.what());
  }
}

std::string write_cosine_csv(const SimilarityGraph& graph, std::span<const std::int64_t> ids) {
  if (ids.size() != graph.size()) throw ContractError("write_cosine_csv: id list does not match graph size");
  std::string out = "source,target,cosine\n";
  for (const auto& e : graph.edges())
    out += std::to_string(ids[e.i]) + "," + std::to_string(ids[e.j]) + "," + format_shortest(e.value) + "\n";
  return out;
}

SimilarityGraph read_cosine_csv(std::string_view text, const BaseMap& map, Diagnostics* diag) {
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty() || rows.front().fields != std::vector<std::string>{"source", "target", "cosine"})
    throw ParseError("cosine csv", 1, "expected header source,target,cosine");
  std::vector<SimilarityEdge> edges;
  std::size_t skipped = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != 3) throw ParseError("cosine csv", rows[i].line, "expected 3 fields");
    const auto s = parse_int(f[0]);
    const auto t = parse_int(f[1]);
    const auto c = parse_double(f[2]);
    if (!s || !t || !c || !(*c > 0 && *c <= 1)) throw ParseError("cosine csv", rows[i].line, "malformed row");
    const auto ps = map.position_of(*s);
    const auto pt = map.position_of(*t);
    if (!ps || !pt) {
      ++skipped;
      continue;
    }
    edges.push_back({static_cast<NodeId>(*ps), static_cast<NodeId>(*pt), *c});
  }
  if (skipped) warn(diag, "cosine csv: " + std::to_string(skipped) + " pairs name journals not on the map");
  return SimilarityGraph(map.size(), std::move(edges), 0.0);
}

}  // namespace jmap
