#pragma once

// Enumeration of connected labeled graphs up to isomorphism.
//
// Graphs are grown one vertex at a time: every connected graph on k+1
// vertices has a vertex whose removal leaves a connected graph (a leaf of a
// spanning tree), so extending each representative on k vertices by one new
// vertex, with every label and every nonempty neighbor set, reaches all
// isomorphism classes on k+1 vertices. Hereditary class constraints prune
// during growth; the rest of the class predicate filters the output.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ahn/canonical.hpp"
#include "ahn/error.hpp"
#include "ahn/graph.hpp"
#include "ahn/topology.hpp"

namespace ahn {

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

// Calls visit(graph) for every connected graph with at most max_nodes
// vertices, labels from `labels`, in class c, exactly once up to
// isomorphism. Order: by vertex count, then canonical form. The visitor
// returns false to stop early. Throws CapacityError when one level holds more
// than `cap` graphs.
template <class Visitor>
void for_each_connected_graph(std::size_t max_nodes, std::vector<Label> labels, const TopologyClass& c,
                              Visitor&& visit, std::size_t cap = kDefaultEnumerationCap) {
  if (max_nodes == 0) throw Error("enumeration needs at least one vertex");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty()) return;
  const TopologyClass growth = c.hereditary_part();

  std::map<std::string, LabeledGraph> level;
  for (const auto& l : labels) {
    LabeledGraph g = make_graph({l}, {});
    level.emplace(canonical_form(g), g);
  }
  for (std::size_t n = 1;; ++n) {
    for (const auto& [form, g] : level)
      if (is_in_class(g, c) && !visit(g)) return;
    if (n == max_nodes) return;

    std::map<std::string, LabeledGraph> next;
    for (const auto& [form, g] : level) {
      std::vector<Label> base_labels = g.labels();
      base_labels.emplace_back();
      const auto base_edges = g.edges();
      for (std::size_t subset = 1; subset < (std::size_t{1} << n); ++subset) {
        std::vector<Edge> edges = base_edges;
        for (Vertex v = 0; v < n; ++v)
          if (subset & (std::size_t{1} << v)) edges.emplace_back(v, n);
        for (const auto& l : labels) {
          base_labels.back() = l;
          LabeledGraph candidate = make_graph(base_labels, edges);
          if (!is_in_class(candidate, growth)) continue;
          auto labeling = canonical_labeling(candidate);
          if (next.contains(labeling.form)) continue;
          LabeledGraph representative = canonical_graph(candidate, labeling);
          next.emplace(std::move(labeling.form), std::move(representative));
          if (next.size() > cap)
            throw CapacityError("enumeration exceeded the cap of " + std::to_string(cap) + " graphs");
        }
      }
    }
    if (next.empty()) return;
    level = std::move(next);
  }
}

inline std::vector<LabeledGraph> enumerate_connected_graphs(std::size_t max_nodes, const std::vector<Label>& labels,
                                                            const TopologyClass& c,
                                                            std::size_t cap = kDefaultEnumerationCap) {
  std::vector<LabeledGraph> out;
  for_each_connected_graph(
      max_nodes, labels, c,
      [&](const LabeledGraph& g) {
        out.push_back(g);
        return true;
      },
      cap);
  return out;
}

}  // namespace ahn
