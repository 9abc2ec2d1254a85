#pragma once

// Label-preserving injective embeddings between labeled graphs.
//
// kind == subgraph: every pattern edge maps onto a host edge.
// kind == induced:  pattern vertices are adjacent iff their images are.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ahn/graph.hpp"

namespace ahn {

enum class EmbeddingKind { subgraph, induced };

struct Embedding {
  std::vector<Vertex> mapping;  // pattern vertex -> host vertex
  EmbeddingKind kind = EmbeddingKind::induced;
};

inline bool is_valid_embedding(const LabeledGraph& pattern, const LabeledGraph& host,
                               const Embedding& e) {
  if (e.mapping.size() != pattern.size()) return false;
  std::vector<bool> used(host.size(), false);
  for (Vertex v = 0; v < pattern.size(); ++v) {
    Vertex image = e.mapping[v];
    if (image >= host.size() || used[image]) return false;
    used[image] = true;
    if (pattern.label(v) != host.label(image)) return false;
  }
  for (Vertex u = 0; u < pattern.size(); ++u)
    for (Vertex v = u + 1; v < pattern.size(); ++v) {
      const bool source = pattern.adjacent(u, v);
      const bool target = host.adjacent(e.mapping[u], e.mapping[v]);
      if (source && !target) return false;
      if (e.kind == EmbeddingKind::induced && !source && target) return false;
    }
  return true;
}

namespace detail {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const LabeledGraph& pattern, const LabeledGraph& host, EmbeddingKind kind)
      : pattern_(pattern), host_(host), kind_(kind) {}

  std::optional<Embedding> run() {
    if (pattern_.size() > host_.size()) return std::nullopt;
    if (pattern_.edge_count() > host_.edge_count()) return std::nullopt;
    if (!labels_fit()) return std::nullopt;
    order_pattern();
    mapping_.assign(pattern_.size(), host_.size());
    used_.assign(host_.size(), false);
    if (!assign(0)) return std::nullopt;
    return Embedding{mapping_, kind_};
  }

 private:
  bool labels_fit() const {
    std::map<Label, std::size_t> available;
    for (const auto& l : host_.labels()) ++available[l];
    for (const auto& l : pattern_.labels())
      if (available[l]-- == 0) return false;
    return true;
  }

  // Connectivity-first order: each next vertex has the most already-placed
  // neighbors, so adjacency constraints prune early.
  void order_pattern() {
    const std::size_t n = pattern_.size();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> links(n, 0);
    order_.clear();
    for (std::size_t step = 0; step < n; ++step) {
      Vertex pick = n;
      for (Vertex v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (pick == n || links[v] > links[pick] ||
            (links[v] == links[pick] && pattern_.degree(v) > pattern_.degree(pick)))
          pick = v;
      }
      placed[pick] = true;
      order_.push_back(pick);
      for (Vertex w : pattern_.neighbors(pick)) ++links[w];
    }
  }

  bool compatible(Vertex v, Vertex image, std::size_t depth) const {
    if (used_[image] || pattern_.label(v) != host_.label(image)) return false;
    if (host_.degree(image) < pattern_.degree(v)) return false;
    for (std::size_t i = 0; i < depth; ++i) {
      Vertex u = order_[i];
      const bool source = pattern_.adjacent(u, v);
      const bool target = host_.adjacent(mapping_[u], image);
      if (source && !target) return false;
      if (kind_ == EmbeddingKind::induced && !source && target) return false;
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    Vertex v = order_[depth];
    for (Vertex image = 0; image < host_.size(); ++image) {
      if (!compatible(v, image, depth)) continue;
      mapping_[v] = image;
      used_[image] = true;
      if (assign(depth + 1)) return true;
      used_[image] = false;
    }
    mapping_[v] = host_.size();
    return false;
  }

  const LabeledGraph& pattern_;
  const LabeledGraph& host_;
  EmbeddingKind kind_;
  std::vector<Vertex> order_;
  std::vector<Vertex> mapping_;
  std::vector<bool> used_;
};

}  // namespace detail

// Some embedding of `pattern` into `host`, or nullopt. Deterministic: the
// first embedding in the search order is returned.
inline std::optional<Embedding> find_embedding(const LabeledGraph& pattern, const LabeledGraph& host,
                                               EmbeddingKind kind) {
  return detail::EmbeddingSearch(pattern, host, kind).run();
}

inline bool embeds_induced(const LabeledGraph& pattern, const LabeledGraph& host) {
  return find_embedding(pattern, host, EmbeddingKind::induced).has_value();
}

inline bool embeds_subgraph(const LabeledGraph& pattern, const LabeledGraph& host) {
  return find_embedding(pattern, host, EmbeddingKind::subgraph).has_value();
}

}  // namespace ahn
