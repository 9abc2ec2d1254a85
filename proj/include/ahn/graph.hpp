#pragma once

// Labeled undirected graphs: the configurations of an ad hoc network.
//
// A LabeledGraph is an immutable value. The structure (vertex ids and
// adjacency) is shared between graphs produced by relabeling, so a run of the
// network, which never changes the topology, copies only label vectors.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ahn/error.hpp"

namespace ahn {

using Label = std::string;
using VertexId = std::string;
// Dense vertex index into a LabeledGraph, 0..size()-1.
using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Orders ids so that embedded digit runs compare numerically ("v2" < "v10").
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i);
      std::string_view nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

class LabeledGraph {
 public:
  LabeledGraph() : structure_(std::make_shared<const Structure>()) {}

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const VertexId& id(Vertex v) const { return structure_->ids.at(v); }
  const std::vector<VertexId>& ids() const noexcept { return structure_->ids; }
  const Label& label(Vertex v) const { return labels_.at(v); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  bool adjacent(Vertex u, Vertex v) const {
    return structure_->matrix[u * size() + v] != 0;
  }
  const std::vector<Vertex>& neighbors(Vertex v) const { return structure_->adjacency.at(v); }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t edge_count() const noexcept { return structure_->edge_count; }

  // Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::optional<Vertex> find(std::string_view id) const {
    auto it = structure_->index.find(std::string(id));
    if (it == structure_->index.end()) return std::nullopt;
    return it->second;
  }

  // Same vertices and edges, new labels.
  LabeledGraph relabeled(std::vector<Label> labels) const {
    if (labels.size() != size()) throw GraphError("relabeling must cover every vertex");
    LabeledGraph g;
    g.structure_ = structure_;
    g.labels_ = std::move(labels);
    return g;
  }

  LabeledGraph with_label(Vertex v, Label l) const {
    std::vector<Label> labels = labels_;
    labels.at(v) = std::move(l);
    return relabeled(std::move(labels));
  }

  bool same_structure(const LabeledGraph& other) const {
    return structure_ == other.structure_ ||
           (structure_->ids == other.structure_->ids &&
            structure_->matrix == other.structure_->matrix);
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.labels_ == b.labels_ && a.same_structure(b);
  }

  // Builds a graph from dense indices. Ids must already be distinct and in
  // natural order; validate_graph is the checked entry point for raw input.
  static LabeledGraph from_parts(std::vector<VertexId> ids, std::vector<Label> labels,
                                 std::span<const Edge> edges) {
    const std::size_t n = ids.size();
    if (labels.size() != n) throw GraphError("labeling is not total");
    auto s = std::make_shared<Structure>();
    s->ids = std::move(ids);
    s->matrix.assign(n * n, 0);
    s->adjacency.resize(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw GraphError("edge endpoint is not a vertex");
      if (u == v) throw GraphError("self-loop on vertex " + s->ids[u]);
      if (s->matrix[u * n + v] != 0) continue;
      s->matrix[u * n + v] = 1;
      s->matrix[v * n + u] = 1;
      s->adjacency[u].push_back(v);
      s->adjacency[v].push_back(u);
      ++s->edge_count;
    }
    for (auto& adj : s->adjacency) std::sort(adj.begin(), adj.end());
    for (Vertex v = 0; v < n; ++v) s->index.emplace(s->ids[v], v);
    if (s->index.size() != n) throw GraphError("duplicate vertex id");
    LabeledGraph g;
    g.structure_ = std::move(s);
    g.labels_ = std::move(labels);
    return g;
  }

 private:
  struct Structure {
    std::vector<VertexId> ids;
    std::vector<std::uint8_t> matrix;
    std::vector<std::vector<Vertex>> adjacency;
    std::unordered_map<VertexId, Vertex> index;
    std::size_t edge_count = 0;
  };

  std::shared_ptr<const Structure> structure_;
  std::vector<Label> labels_;
};

// Default ids v1..vn, which natural_less keeps in index order.
inline std::vector<VertexId> default_ids(std::size_t n) {
  std::vector<VertexId> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) ids.push_back("v" + std::to_string(i));
  return ids;
}

inline LabeledGraph make_graph(std::vector<Label> labels, std::span<const Edge> edges) {
  auto ids = default_ids(labels.size());
  return LabeledGraph::from_parts(std::move(ids), std::move(labels), edges);
}

inline LabeledGraph make_graph(std::vector<Label> labels, std::initializer_list<Edge> edges) {
  return make_graph(std::move(labels), std::span<const Edge>(edges.begin(), edges.size()));
}

// Checked construction from raw identifiers. Vertices are reordered by
// natural id order; duplicate edges collapse to one unordered pair.
inline LabeledGraph validate_graph(const std::vector<VertexId>& raw_vertices,
                                   const std::vector<std::pair<VertexId, VertexId>>& raw_edges,
                                   const std::map<VertexId, Label>& raw_labels) {
  std::vector<VertexId> ids = raw_vertices;
  std::sort(ids.begin(), ids.end(),
            [](const VertexId& a, const VertexId& b) { return natural_less(a, b); });
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (ids[i] == ids[i - 1]) throw GraphError("duplicate vertex id " + ids[i]);

  std::unordered_map<VertexId, Vertex> index;
  for (Vertex v = 0; v < ids.size(); ++v) index.emplace(ids[v], v);

  std::vector<Label> labels(ids.size());
  for (Vertex v = 0; v < ids.size(); ++v) {
    auto it = raw_labels.find(ids[v]);
    if (it == raw_labels.end()) throw GraphError("missing label for vertex " + ids[v]);
    labels[v] = it->second;
  }
  for (const auto& [id, label] : raw_labels)
    if (!index.contains(id)) throw GraphError("label given for unknown vertex " + id);

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [a, b] : raw_edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw GraphError("edge endpoint " + a + " is not a vertex");
    if (ib == index.end()) throw GraphError("edge endpoint " + b + " is not a vertex");
    if (ia->second == ib->second) throw GraphError("self-loop on vertex " + a);
    edges.emplace_back(ia->second, ib->second);
  }
  return LabeledGraph::from_parts(std::move(ids), std::move(labels), edges);
}

// Subgraph induced by `keep` (any order); vertex ids and labels are kept.
inline LabeledGraph induced_subgraph(const LabeledGraph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::size_t> position(g.size(), g.size());
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = i;
  std::vector<VertexId> ids;
  std::vector<Label> labels;
  for (Vertex v : keep) {
    ids.push_back(g.id(v));
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (position[u] < keep.size() && position[v] < keep.size())
      edges.emplace_back(position[u], position[v]);
  return LabeledGraph::from_parts(std::move(ids), std::move(labels), edges);
}

inline std::vector<std::vector<Vertex>> connected_components(const LabeledGraph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<bool> seen(g.size(), false);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> component{s};
    seen[s] = true;
    for (std::size_t i = 0; i < component.size(); ++i)
      for (Vertex w : g.neighbors(component[i]))
        if (!seen[w]) {
          seen[w] = true;
          component.push_back(w);
        }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

inline bool is_connected(const LabeledGraph& g) {
  return g.size() <= 1 || connected_components(g).size() == 1;
}

inline std::size_t max_degree(const LabeledGraph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.size(); ++v) best = std::max(best, g.degree(v));
  return best;
}

// Breadth-first distances from `source`; unreachable vertices get size().
inline std::vector<std::size_t> bfs_distances(const LabeledGraph& g, Vertex source) {
  std::vector<std::size_t> dist(g.size(), g.size());
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u))
      if (dist[w] == g.size()) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

// Longest shortest path over all vertex pairs. Defined on connected graphs only.
inline std::size_t diameter(const LabeledGraph& g) {
  if (!is_connected(g)) throw GraphError("diameter is undefined for a disconnected graph");
  std::size_t best = 0;
  for (Vertex s = 0; s < g.size(); ++s)
    for (std::size_t d : bfs_distances(g, s)) best = std::max(best, d);
  return best;
}

namespace detail {

struct LongestPathSearch {
  const LabeledGraph& g;
  std::size_t limit;  // stop once a path this long is found
  std::size_t best = 0;
  std::vector<bool> on_path;

  void extend(Vertex v, std::size_t length) {
    best = std::max(best, length);
    if (best >= limit) return;
    for (Vertex w : g.neighbors(v)) {
      if (on_path[w]) continue;
      on_path[w] = true;
      extend(w, length + 1);
      on_path[w] = false;
      if (best >= limit) return;
    }
  }
};

}  // namespace detail

// Number of edges of the longest simple path. Exhaustive; the search stops as
// soon as a path of `stop_at` edges exists (a Hamiltonian path always ends it).
inline std::size_t longest_simple_path_length(const LabeledGraph& g,
                                              std::size_t stop_at = static_cast<std::size_t>(-1)) {
  std::size_t best = 0;
  for (const auto& component : connected_components(g)) {
    const std::size_t limit = std::min(stop_at, component.size() - 1);
    detail::LongestPathSearch search{g, limit, 0, std::vector<bool>(g.size(), false)};
    for (Vertex s : component) {
      if (search.best >= limit) break;
      search.on_path[s] = true;
      search.extend(s, 0);
      search.on_path[s] = false;
    }
    best = std::max(best, search.best);
    if (best >= stop_at) break;
  }
  return best;
}

inline bool has_path_longer_than(const LabeledGraph& g, std::size_t k) {
  return longest_simple_path_length(g, k + 1) > k;
}

inline bool is_clique(const LabeledGraph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

namespace detail {

// Bron-Kerbosch with Tomita pivoting.
inline void bron_kerbosch(const LabeledGraph& g, std::vector<Vertex>& r, std::vector<Vertex> p,
                          std::vector<Vertex> x, std::vector<std::vector<Vertex>>& out) {
  if (p.empty() && x.empty()) {
    auto clique = r;
    std::sort(clique.begin(), clique.end());
    out.push_back(std::move(clique));
    return;
  }
  Vertex pivot = 0;
  std::size_t pivot_hits = 0;
  bool have_pivot = false;
  for (const auto* set : {&p, &x})
    for (Vertex u : *set) {
      std::size_t hits = 0;
      for (Vertex v : p)
        if (g.adjacent(u, v)) ++hits;
      if (!have_pivot || hits > pivot_hits) {
        pivot = u;
        pivot_hits = hits;
        have_pivot = true;
      }
    }
  std::vector<Vertex> candidates;
  for (Vertex v : p)
    if (!g.adjacent(pivot, v)) candidates.push_back(v);
  for (Vertex v : candidates) {
    std::vector<Vertex> np;
    std::vector<Vertex> nx;
    for (Vertex w : p)
      if (g.adjacent(v, w)) np.push_back(w);
    for (Vertex w : x)
      if (g.adjacent(v, w)) nx.push_back(w);
    r.push_back(v);
    bron_kerbosch(g, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace detail

// Inclusion-maximal cliques, each sorted, listed in lexicographic order.
inline std::vector<std::vector<Vertex>> maximal_cliques(const LabeledGraph& g) {
  std::vector<std::vector<Vertex>> out;
  if (g.empty()) return out;
  std::vector<Vertex> r;
  std::vector<Vertex> p(g.size());
  for (Vertex v = 0; v < g.size(); ++v) p[v] = v;
  detail::bron_kerbosch(g, r, std::move(p), {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct labels occurring in g, sorted.
inline std::vector<Label> label_set(const LabeledGraph& g) {
  std::set<Label> s(g.labels().begin(), g.labels().end());
  return {s.begin(), s.end()};
}

}  // namespace ahn
