#pragma once

// Canonical labeling for isomorphism-class deduplication.
//
// Color refinement seeded by labels, then exhaustive individualization of
// the first non-singleton cell. Every branch is explored except those
// starting at a twin of an already-explored vertex (same cell, same
// neighborhood), whose transposition is an automorphism fixing the current
// coloring. The result is exact: two graphs get the same form iff they are
// isomorphic as labeled graphs.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ahn/graph.hpp"

namespace ahn {

struct CanonicalLabeling {
  std::string form;
  // order[i] is the vertex of the input placed at canonical position i.
  std::vector<Vertex> order;
};

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const LabeledGraph& g) : g_(g) {}

  CanonicalLabeling run() {
    const std::size_t n = g_.size();
    auto labels = label_set(g_);
    std::vector<std::size_t> colors(n);
    for (Vertex v = 0; v < n; ++v)
      colors[v] = static_cast<std::size_t>(
          std::lower_bound(labels.begin(), labels.end(), g_.label(v)) - labels.begin());
    refine(colors);
    search(colors);
    return {best_form_.value_or(encode({})), best_order_};
  }

 private:
  // Re-rank by (own color, sorted neighbor colors) until stable.
  void refine(std::vector<std::size_t>& colors) const {
    const std::size_t n = g_.size();
    std::size_t classes = count_classes(colors);
    while (true) {
      std::vector<std::pair<std::size_t, std::vector<std::size_t>>> signature(n);
      for (Vertex v = 0; v < n; ++v) {
        signature[v].first = colors[v];
        for (Vertex w : g_.neighbors(v)) signature[v].second.push_back(colors[w]);
        std::sort(signature[v].second.begin(), signature[v].second.end());
      }
      auto sorted = signature;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (Vertex v = 0; v < n; ++v)
        colors[v] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), signature[v]) - sorted.begin());
      const std::size_t next = sorted.size();
      if (next == classes) return;
      classes = next;
    }
  }

  static std::size_t count_classes(const std::vector<std::size_t>& colors) {
    auto c = colors;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  bool twins(Vertex a, Vertex b) const {
    for (Vertex w = 0; w < g_.size(); ++w) {
      if (w == a || w == b) continue;
      if (g_.adjacent(a, w) != g_.adjacent(b, w)) return false;
    }
    return true;
  }

  void search(const std::vector<std::size_t>& colors) {
    const std::size_t n = g_.size();
    std::vector<std::size_t> cell_size(n, 0);
    for (auto c : colors) ++cell_size[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c)
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    if (target == n) {
      std::vector<Vertex> order(n);
      for (Vertex v = 0; v < n; ++v) order[colors[v]] = v;
      std::string form = encode(order);
      if (!best_form_ || form < *best_form_) {
        best_form_ = std::move(form);
        best_order_ = std::move(order);
      }
      return;
    }
    std::vector<Vertex> tried;
    for (Vertex v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](Vertex t) { return twins(t, v); })) continue;
      tried.push_back(v);
      std::vector<std::size_t> next(n);
      for (Vertex w = 0; w < n; ++w) next[w] = 2 * colors[w] + 1;
      next[v] = 2 * colors[v];
      refine(next);
      search(next);
    }
  }

  std::string encode(const std::vector<Vertex>& order) const {
    std::string out = std::to_string(order.size()) + ":";
    for (Vertex v : order) {
      const auto& l = g_.label(v);
      out += std::to_string(l.size());
      out += '=';
      out += l;
      out += ';';
    }
    out += '|';
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        out += g_.adjacent(order[i], order[j]) ? '1' : '0';
    return out;
  }

  const LabeledGraph& g_;
  std::optional<std::string> best_form_;
  std::vector<Vertex> best_order_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const LabeledGraph& g) {
  return detail::Canonicalizer(g).run();
}

// Byte string equal for two graphs iff they are isomorphic as labeled graphs.
inline std::string canonical_form(const LabeledGraph& g) { return canonical_labeling(g).form; }

// The isomorphic copy of g with vertices in canonical order and ids v1..vn.
inline LabeledGraph canonical_graph(const LabeledGraph& g, const CanonicalLabeling& labeling) {
  std::vector<std::size_t> position(g.size());
  for (std::size_t i = 0; i < labeling.order.size(); ++i) position[labeling.order[i]] = i;
  std::vector<Label> labels;
  for (Vertex v : labeling.order) labels.push_back(g.label(v));
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(position[u], position[v]);
  return make_graph(std::move(labels), edges);
}

inline LabeledGraph canonical_graph(const LabeledGraph& g) {
  return canonical_graph(g, canonical_labeling(g));
}

}  // namespace ahn
