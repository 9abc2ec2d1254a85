#pragma once

// Topology classes restricting which configurations a network may take.
//
// All predicates here depend on structure only, never on labels, so a run
// (which keeps the structure fixed) stays inside the class of its initial
// configuration. Predicates on disconnected graphs apply per component.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ahn/clique_graph.hpp"
#include "ahn/error.hpp"
#include "ahn/graph.hpp"

namespace ahn {

class TopologyClass {
 public:
  enum class Kind { unrestricted, bounded_path, bounded_diameter, bounded_degree, bpc, clique, intersection };

  static TopologyClass unrestricted() { return TopologyClass(Kind::unrestricted, 0); }
  static TopologyClass bounded_path(std::size_t k) { return TopologyClass(Kind::bounded_path, k); }
  static TopologyClass bounded_diameter(std::size_t k) { return TopologyClass(Kind::bounded_diameter, k); }
  static TopologyClass bounded_degree(std::size_t d) { return TopologyClass(Kind::bounded_degree, d); }
  static TopologyClass bpc(std::size_t n) { return TopologyClass(Kind::bpc, n); }
  static TopologyClass clique() { return TopologyClass(Kind::clique, 0); }
  static TopologyClass intersection(std::vector<TopologyClass> parts) {
    std::vector<TopologyClass> flat;
    for (auto& p : parts) {
      if (p.kind_ == Kind::intersection)
        flat.insert(flat.end(), p.parts_.begin(), p.parts_.end());
      else if (p.kind_ != Kind::unrestricted)
        flat.push_back(std::move(p));
    }
    if (flat.empty()) return unrestricted();
    if (flat.size() == 1) return flat.front();
    TopologyClass c(Kind::intersection, 0);
    c.parts_ = std::move(flat);
    return c;
  }

  // Accepts "unrestricted", "clique", "bounded-path:K", "bounded-diameter:K",
  // "bounded-degree:D", "bpc:N", and intersections joined by '+'. The
  // short forms "path:K", "diameter:K" and "degree:D" are also accepted.
  static TopologyClass parse(std::string_view text) {
    if (text.find('+') != std::string_view::npos) {
      std::vector<TopologyClass> parts;
      std::size_t start = 0;
      while (start <= text.size()) {
        std::size_t end = text.find('+', start);
        if (end == std::string_view::npos) end = text.size();
        parts.push_back(parse(text.substr(start, end - start)));
        start = end + 1;
      }
      return intersection(std::move(parts));
    }
    if (text == "unrestricted") return unrestricted();
    if (text == "clique") return clique();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw Error("unknown topology class '" + std::string(text) + "'");
    const std::string_view name = text.substr(0, colon);
    const std::string_view value = text.substr(colon + 1);
    std::size_t bound = 0;
    if (value.empty()) throw Error("missing bound in topology class '" + std::string(text) + "'");
    for (char c : value) {
      if (c < '0' || c > '9') throw Error("bad bound in topology class '" + std::string(text) + "'");
      bound = bound * 10 + static_cast<std::size_t>(c - '0');
    }
    if (bound == 0) throw Error("topology class bounds must be positive");
    if (name == "bounded-path" || name == "path") return bounded_path(bound);
    if (name == "bounded-diameter" || name == "diameter") return bounded_diameter(bound);
    if (name == "bounded-degree" || name == "degree") return bounded_degree(bound);
    if (name == "bpc") return bpc(bound);
    throw Error("unknown topology class '" + std::string(text) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t bound() const noexcept { return bound_; }
  const std::vector<TopologyClass>& parts() const noexcept { return parts_; }

  // Closed under connected induced subgraphs.
  bool hereditary() const {
    switch (kind_) {
      case Kind::bounded_diameter:
        return false;
      case Kind::intersection:
        for (const auto& p : parts_)
          if (!p.hereditary()) return false;
        return true;
      default:
        return true;
    }
  }

  // Induced subgraph ordering is a wqo on the class (bounded paths or BPC_n),
  // which guarantees termination of backward saturation.
  bool well_quasi_ordered() const {
    if (kind_ == Kind::bounded_path || kind_ == Kind::bpc) return true;
    if (kind_ == Kind::intersection)
      for (const auto& p : parts_)
        if (p.well_quasi_ordered()) return true;
    return false;
  }

  // The hereditary part: drops non-hereditary conjuncts.
  TopologyClass hereditary_part() const {
    if (kind_ == Kind::bounded_diameter) return unrestricted();
    if (kind_ != Kind::intersection) return *this;
    std::vector<TopologyClass> kept;
    for (const auto& p : parts_) kept.push_back(p.hereditary_part());
    return intersection(std::move(kept));
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::unrestricted: return "unrestricted";
      case Kind::clique: return "clique";
      case Kind::bounded_path: return "bounded-path:" + std::to_string(bound_);
      case Kind::bounded_diameter: return "bounded-diameter:" + std::to_string(bound_);
      case Kind::bounded_degree: return "bounded-degree:" + std::to_string(bound_);
      case Kind::bpc: return "bpc:" + std::to_string(bound_);
      case Kind::intersection: {
        std::string out;
        for (const auto& p : parts_) {
          if (!out.empty()) out += '+';
          out += p.to_string();
        }
        return out;
      }
    }
    return {};
  }

  friend bool operator==(const TopologyClass&, const TopologyClass&) = default;

 private:
  TopologyClass(Kind kind, std::size_t bound) : kind_(kind), bound_(bound) {}

  Kind kind_;
  std::size_t bound_;
  std::vector<TopologyClass> parts_;
};

namespace detail {

inline bool component_in_class(const LabeledGraph& component, const TopologyClass& c) {
  using Kind = TopologyClass::Kind;
  switch (c.kind()) {
    case Kind::unrestricted:
      return true;
    case Kind::bounded_path:
      return !has_path_longer_than(component, c.bound());
    case Kind::bounded_diameter:
      return diameter(component) <= c.bound();
    case Kind::bounded_degree:
      return max_degree(component) <= c.bound();
    case Kind::clique:
      return component.edge_count() * 2 == component.size() * (component.size() - 1);
    case Kind::bpc:
      return is_bpc(component, c.bound());
    case Kind::intersection:
      for (const auto& p : c.parts())
        if (!component_in_class(component, p)) return false;
      return true;
  }
  return false;
}

}  // namespace detail

inline bool is_in_class(const LabeledGraph& g, const TopologyClass& c) {
  if (c.kind() == TopologyClass::Kind::unrestricted) return true;
  if (is_connected(g)) return detail::component_in_class(g, c);
  for (const auto& component : connected_components(g))
    if (!detail::component_in_class(induced_subgraph(g, component), c)) return false;
  return true;
}

}  // namespace ahn
