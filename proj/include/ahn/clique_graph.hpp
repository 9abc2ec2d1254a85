#pragma once

// Maximal clique graphs and the clique-graph ordering.
//
// K_G is bipartite: one side is the vertex set of G, the other side holds one
// vertex per maximal clique of G, labeled with the reserved bullet label, and
// a vertex is adjacent to every clique that contains it.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ahn/graph.hpp"
#include "ahn/graph_io.hpp"

namespace ahn {

// Label of clique vertices. Never a valid protocol state.
inline const Label kCliqueLabel = "\xE2\x80\xA2";  // U+2022 BULLET

class CliqueGraph {
 public:
  CliqueGraph(LabeledGraph source, std::vector<std::vector<Vertex>> cliques)
      : source_(std::move(source)), cliques_(std::move(cliques)), membership_(source_.size()) {
    for (std::size_t c = 0; c < cliques_.size(); ++c)
      for (Vertex v : cliques_[c]) membership_[v].push_back(c);
  }

  const LabeledGraph& source() const noexcept { return source_; }
  // Vertex part X.
  std::size_t vertex_count() const noexcept { return source_.size(); }
  // Clique part W, each clique sorted, in lexicographic order.
  const std::vector<std::vector<Vertex>>& cliques() const noexcept { return cliques_; }
  std::size_t clique_count() const noexcept { return cliques_.size(); }
  // Cliques containing v, ascending.
  const std::vector<std::size_t>& cliques_of(Vertex v) const { return membership_.at(v); }

  bool contains(std::size_t clique, Vertex v) const {
    return std::binary_search(cliques_[clique].begin(), cliques_[clique].end(), v);
  }

  bool share_clique(Vertex a, Vertex b) const {
    for (std::size_t c : membership_[a])
      if (contains(c, b)) return true;
    return false;
  }

  // K_G as a plain labeled graph: source vertices first, then one vertex per
  // clique, edges only across the two parts.
  LabeledGraph as_graph() const {
    std::vector<VertexId> ids = source_.ids();
    std::vector<Label> labels = source_.labels();
    std::string prefix = "w";
    auto collides = [&](const std::string& p) {
      for (std::size_t c = 0; c < cliques_.size(); ++c)
        if (source_.find(p + std::to_string(c + 1))) return true;
      return false;
    };
    while (collides(prefix)) prefix += "w";
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < cliques_.size(); ++c) {
      ids.push_back(prefix + std::to_string(c + 1));
      labels.push_back(kCliqueLabel);
      for (Vertex v : cliques_[c]) edges.emplace_back(v, source_.size() + c);
    }
    return LabeledGraph::from_parts(std::move(ids), std::move(labels), edges);
  }

  // Two source vertices are adjacent iff they share a clique vertex.
  LabeledGraph reconstruct() const {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < source_.size(); ++u)
      for (Vertex v = u + 1; v < source_.size(); ++v)
        if (share_clique(u, v)) edges.emplace_back(u, v);
    return LabeledGraph::from_parts(source_.ids(), source_.labels(), edges);
  }

 private:
  LabeledGraph source_;
  std::vector<std::vector<Vertex>> cliques_;
  std::vector<std::vector<std::size_t>> membership_;
};

inline CliqueGraph build_clique_graph(const LabeledGraph& g) {
  if (!is_connected(g)) throw GraphError("maximal clique graph requires a connected graph");
  for (const auto& l : g.labels())
    if (l == kCliqueLabel) throw GraphError("the clique label is reserved");
  return CliqueGraph(g, maximal_cliques(g));
}

inline std::size_t clique_graph_longest_path(const CliqueGraph& k, std::size_t stop_at = static_cast<std::size_t>(-1)) {
  return longest_simple_path_length(k.as_graph(), stop_at);
}

// Membership in BPC_n for a connected graph: every simple path of K_G has at
// most n edges.
inline bool is_bpc(const LabeledGraph& g, std::size_t n) {
  return !has_path_longer_than(build_clique_graph(g).as_graph(), n);
}

inline std::string clique_graph_to_dot(const CliqueGraph& k, std::string_view name = "K") {
  const LabeledGraph kg = k.as_graph();
  std::ostringstream out;
  out << "graph " << detail::dot_quote(name) << " {\n";
  for (Vertex v = 0; v < kg.size(); ++v) {
    out << "  " << detail::dot_quote(kg.id(v)) << " [label=" << detail::dot_quote(kg.label(v));
    if (v >= k.vertex_count()) out << ", shape=box";
    out << "];\n";
  }
  for (auto [u, v] : kg.edges())
    out << "  " << detail::dot_quote(kg.id(u)) << " -- " << detail::dot_quote(kg.id(v)) << ";\n";
  out << "}\n";
  return out.str();
}

// Pair of injections witnessing G1 below G2 in the clique-graph ordering.
struct CliqueOrderWitness {
  std::vector<Vertex> vertex_map;       // X1 -> X2
  std::vector<std::size_t> clique_map;  // W1 -> W2
};

// Checks the four defining conditions directly.
inline bool is_valid_clique_witness(const CliqueGraph& small, const CliqueGraph& large,
                                    const CliqueOrderWitness& w) {
  if (w.vertex_map.size() != small.vertex_count() || w.clique_map.size() != small.clique_count())
    return false;
  std::vector<bool> used_v(large.vertex_count(), false);
  for (Vertex v : w.vertex_map) {
    if (v >= large.vertex_count() || used_v[v]) return false;
    used_v[v] = true;
  }
  std::vector<bool> used_c(large.clique_count(), false);
  for (std::size_t c : w.clique_map) {
    if (c >= large.clique_count() || used_c[c]) return false;
    used_c[c] = true;
  }
  // (i) membership is preserved and reflected
  for (Vertex v = 0; v < small.vertex_count(); ++v)
    for (std::size_t c = 0; c < small.clique_count(); ++c)
      if (small.contains(c, v) != large.contains(w.clique_map[c], w.vertex_map[v])) return false;
  // (ii) vertices sharing any clique of the larger graph share an image clique
  for (Vertex a = 0; a < small.vertex_count(); ++a)
    for (Vertex b = a + 1; b < small.vertex_count(); ++b) {
      if (!large.share_clique(w.vertex_map[a], w.vertex_map[b])) continue;
      bool found = false;
      for (std::size_t c = 0; c < small.clique_count() && !found; ++c)
        found = large.contains(w.clique_map[c], w.vertex_map[a]) &&
                large.contains(w.clique_map[c], w.vertex_map[b]);
      if (!found) return false;
    }
  // (iii) vertex labels; (iv) holds trivially, every clique carries the bullet
  for (Vertex v = 0; v < small.vertex_count(); ++v)
    if (small.source().label(v) != large.source().label(w.vertex_map[v])) return false;
  return true;
}

namespace detail {

class CliqueOrderSearch {
 public:
  CliqueOrderSearch(const CliqueGraph& small, const CliqueGraph& large)
      : small_(small), large_(large) {}

  std::optional<CliqueOrderWitness> run() {
    if (small_.vertex_count() > large_.vertex_count()) return std::nullopt;
    if (small_.clique_count() > large_.clique_count()) return std::nullopt;
    for (std::size_t c = 0; c < small_.clique_count(); ++c) clique_order_.push_back(c);
    std::stable_sort(clique_order_.begin(), clique_order_.end(), [&](std::size_t a, std::size_t b) {
      return small_.cliques()[a].size() > small_.cliques()[b].size();
    });
    small_profiles_ = profiles(small_);
    large_profiles_ = profiles(large_);
    witness_.clique_map.assign(small_.clique_count(), large_.clique_count());
    witness_.vertex_map.assign(small_.vertex_count(), large_.vertex_count());
    used_cliques_.assign(large_.clique_count(), false);
    used_vertices_.assign(large_.vertex_count(), false);
    if (!assign_clique(0)) return std::nullopt;
    return witness_;
  }

 private:
  using Profile = std::map<Label, std::size_t>;

  static std::vector<Profile> profiles(const CliqueGraph& k) {
    std::vector<Profile> out;
    for (const auto& clique : k.cliques()) {
      Profile p;
      for (Vertex v : clique) ++p[k.source().label(v)];
      out.push_back(std::move(p));
    }
    return out;
  }

  static bool profile_fits(const Profile& small, const Profile& large) {
    for (const auto& [label, count] : small) {
      auto it = large.find(label);
      if (it == large.end() || it->second < count) return false;
    }
    return true;
  }

  static std::size_t overlap(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t n = 0;
    for (Vertex v : a) n += std::binary_search(b.begin(), b.end(), v) ? 1 : 0;
    return n;
  }

  bool assign_clique(std::size_t depth) {
    if (depth == clique_order_.size()) return assign_vertex(0);
    const std::size_t c = clique_order_[depth];
    for (std::size_t d = 0; d < large_.clique_count(); ++d) {
      if (used_cliques_[d]) continue;
      if (large_.cliques()[d].size() < small_.cliques()[c].size()) continue;
      if (!profile_fits(small_profiles_[c], large_profiles_[d])) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const std::size_t prev = clique_order_[i];
        ok = overlap(small_.cliques()[c], small_.cliques()[prev]) <=
             overlap(large_.cliques()[d], large_.cliques()[witness_.clique_map[prev]]);
      }
      if (!ok) continue;
      witness_.clique_map[c] = d;
      used_cliques_[d] = true;
      if (assign_clique(depth + 1)) return true;
      used_cliques_[d] = false;
    }
    witness_.clique_map[c] = large_.clique_count();
    return false;
  }

  bool vertex_fits(Vertex v, Vertex image) const {
    if (used_vertices_[image]) return false;
    if (small_.source().label(v) != large_.source().label(image)) return false;
    for (std::size_t c = 0; c < small_.clique_count(); ++c)
      if (small_.contains(c, v) != large_.contains(witness_.clique_map[c], image)) return false;
    for (Vertex u = 0; u < v; ++u) {
      const Vertex fu = witness_.vertex_map[u];
      if (!large_.share_clique(fu, image)) continue;
      bool found = false;
      for (std::size_t c = 0; c < small_.clique_count() && !found; ++c)
        found = large_.contains(witness_.clique_map[c], fu) &&
                large_.contains(witness_.clique_map[c], image);
      if (!found) return false;
    }
    return true;
  }

  bool assign_vertex(Vertex v) {
    if (v == small_.vertex_count()) return true;
    for (Vertex image = 0; image < large_.vertex_count(); ++image) {
      if (!vertex_fits(v, image)) continue;
      witness_.vertex_map[v] = image;
      used_vertices_[image] = true;
      if (assign_vertex(v + 1)) return true;
      used_vertices_[image] = false;
    }
    witness_.vertex_map[v] = large_.vertex_count();
    return false;
  }

  const CliqueGraph& small_;
  const CliqueGraph& large_;
  std::vector<std::size_t> clique_order_;
  std::vector<Profile> small_profiles_;
  std::vector<Profile> large_profiles_;
  CliqueOrderWitness witness_;
  std::vector<bool> used_cliques_;
  std::vector<bool> used_vertices_;
};

}  // namespace detail

inline std::optional<CliqueOrderWitness> clique_order_leq(const CliqueGraph& small,
                                                          const CliqueGraph& large) {
  return detail::CliqueOrderSearch(small, large).run();
}

// Clique parts are assigned before vertex parts.
inline std::optional<CliqueOrderWitness> clique_order_leq(const LabeledGraph& small,
                                                          const LabeledGraph& large) {
  return clique_order_leq(build_clique_graph(small), build_clique_graph(large));
}

}  // namespace ahn
