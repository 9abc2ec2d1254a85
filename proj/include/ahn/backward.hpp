#pragma once

// Symbolic backward coverability.
//
// Upward-closed sets of configurations (w.r.t. induced subgraph embedding)
// are represented by finite bases of minimal connected graphs. Starting from
// the single vertex labeled with the target, predecessor bases are added
// until no new minimal element appears. On classes where the induced subgraph
// ordering is a wqo (bounded simple paths, BPC_n) the loop terminates.
//
// One predecessor step of an upward-closed set ↑γ needs at most one vertex
// beyond the copy of γ: the sender of the broadcast, when it lies outside γ.
// All other vertices of a predecessor are untouched by the step.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ahn/canonical.hpp"
#include "ahn/embedding.hpp"
#include "ahn/error.hpp"
#include "ahn/forward.hpp"
#include "ahn/graph.hpp"
#include "ahn/protocol.hpp"
#include "ahn/topology.hpp"

namespace ahn {

// Finite antichain of connected configurations under induced embedding.
class Basis {
 public:
  Basis() = default;
  Basis(std::vector<LabeledGraph> elements, std::vector<std::string> forms, TopologyClass cls)
      : elements_(std::move(elements)), forms_(std::move(forms)), class_(std::move(cls)) {}

  // Sorted by (vertex count, canonical form); each in canonical vertex order.
  const std::vector<LabeledGraph>& elements() const noexcept { return elements_; }
  const std::vector<std::string>& forms() const noexcept { return forms_; }
  const TopologyClass& topology_class() const noexcept { return class_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  // g lies in the upward closure.
  bool covers(const LabeledGraph& g) const {
    for (const auto& e : elements_)
      if (e.size() <= g.size() && embeds_induced(e, g)) return true;
    return false;
  }

  std::size_t max_element_size() const {
    std::size_t best = 0;
    for (const auto& e : elements_) best = std::max(best, e.size());
    return best;
  }

 private:
  std::vector<LabeledGraph> elements_;
  std::vector<std::string> forms_;
  TopologyClass class_ = TopologyClass::unrestricted();
};

// The induced-minimal elements of `graphs`, one per isomorphism class.
inline Basis minimize(const std::vector<LabeledGraph>& graphs, const TopologyClass& cls) {
  std::map<std::pair<std::size_t, std::string>, LabeledGraph> sorted;
  for (const auto& g : graphs) {
    if (!is_connected(g)) throw GraphError("basis elements must be connected");
    if (!is_in_class(g, cls)) throw GraphError("basis element outside the class " + cls.to_string());
    auto labeling = canonical_labeling(g);
    std::pair<std::size_t, std::string> key{g.size(), labeling.form};
    if (sorted.contains(key)) continue;
    sorted.emplace(std::move(key), canonical_graph(g, labeling));
  }
  std::vector<LabeledGraph> kept;
  std::vector<std::string> forms;
  for (auto& [key, g] : sorted) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const LabeledGraph& k) {
      return k.size() < g.size() && embeds_induced(k, g);
    });
    if (dominated) continue;
    kept.push_back(std::move(g));
    forms.push_back(key.second);
  }
  return Basis(std::move(kept), std::move(forms), cls);
}

namespace detail {

// For a vertex whose label after receiving `message` is `post`, the labels it
// may have had before the step: any s with post in R_a(s), or post itself
// when reception is not enabled there.
class PreReception {
 public:
  explicit PreReception(const Process& p) : process_(p) {
    for (const auto& r : p.rules())
      if (r.kind == ActionKind::receive) {
        enabled_.insert({r.message, r.from});
        sources_[{r.message, r.to}].insert(p.state_index(r.from));
      }
  }

  std::vector<State> options(const Message& message, const State& post) const {
    std::set<std::size_t> indices;
    if (auto it = sources_.find({message, post}); it != sources_.end()) indices = it->second;
    if (!enabled_.contains({message, post})) indices.insert(process_.state_index(post));
    std::vector<State> out;
    for (auto i : indices) out.push_back(process_.states()[i]);
    return out;
  }

 private:
  const Process& process_;
  std::set<std::pair<Message, State>> enabled_;
  std::map<std::pair<Message, State>, std::set<std::size_t>> sources_;
};

// Calls emit(labels) for every combination of per-vertex options, applied on
// top of `base` at the given vertices.
inline void for_each_choice(std::vector<Label> base, const std::vector<Vertex>& vertices,
                            const std::vector<std::vector<State>>& options,
                            const std::function<void(const std::vector<Label>&)>& emit) {
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<std::size_t> choice(vertices.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < vertices.size(); ++k) base[vertices[k]] = options[k][choice[k]];
    emit(base);
    bool exhausted = true;
    for (std::size_t k = vertices.size(); k-- > 0;) {
      if (++choice[k] < options[k].size()) {
        exhausted = false;
        break;
      }
      choice[k] = 0;
    }
    if (exhausted) return;
  }
}

inline VertexId fresh_id(const LabeledGraph& g) {
  for (std::size_t i = g.size() + 1;; ++i) {
    VertexId id = "v" + std::to_string(i);
    if (!g.find(id)) return id;
  }
}

}  // namespace detail

// Minimal predecessors of ↑gamma within the class: a finite set S with
// ↑S ∪ ↑gamma = Pre(↑gamma) ∪ ↑gamma. Returned in canonical form, sorted by
// (vertex count, canonical form), without duplicates.
inline std::vector<LabeledGraph> pre_basis(const Process& p, const LabeledGraph& gamma, const TopologyClass& cls) {
  const detail::PreReception pre(p);
  std::map<std::pair<std::size_t, std::string>, LabeledGraph> out;
  auto keep = [&](const LabeledGraph& g) {
    if (!is_connected(g) || !is_in_class(g, cls)) return;
    auto labeling = canonical_labeling(g);
    std::pair<std::size_t, std::string> key{g.size(), labeling.form};
    if (!out.contains(key)) out.emplace(std::move(key), canonical_graph(g, labeling));
  };

  for (Vertex v = 0; v < gamma.size(); ++v) {
    for (const auto& r : p.rules()) {
      if (r.to != gamma.label(v)) continue;
      // Internal step at v.
      if (r.kind == ActionKind::tau) keep(gamma.with_label(v, r.from));
      if (r.kind != ActionKind::broadcast) continue;
      // v is the sender; each neighbor either received or was not enabled.
      std::vector<Vertex> receivers(gamma.neighbors(v).begin(), gamma.neighbors(v).end());
      std::vector<std::vector<State>> options;
      for (Vertex u : receivers) options.push_back(pre.options(r.message, gamma.label(u)));
      std::vector<Label> base = gamma.labels();
      base[v] = r.from;
      detail::for_each_choice(base, receivers, options,
                              [&](const std::vector<Label>& labels) { keep(gamma.relabeled(labels)); });
    }
  }

  // Sender outside gamma: one fresh vertex adjacent to a nonempty subset.
  std::set<std::pair<State, Message>> senders;
  for (const auto& r : p.rules())
    if (r.kind == ActionKind::broadcast) senders.insert({r.from, r.message});
  const std::size_t n = gamma.size();
  std::vector<VertexId> ids = gamma.ids();
  ids.push_back(detail::fresh_id(gamma));
  const auto base_edges = gamma.edges();
  for (const auto& [sender, message] : senders) {
    for (std::size_t subset = 1; subset < (std::size_t{1} << n); ++subset) {
      std::vector<Vertex> receivers;
      std::vector<Edge> edges = base_edges;
      for (Vertex u = 0; u < n; ++u)
        if (subset & (std::size_t{1} << u)) {
          receivers.push_back(u);
          edges.emplace_back(u, n);
        }
      std::vector<std::vector<State>> options;
      for (Vertex u : receivers) options.push_back(pre.options(message, gamma.label(u)));
      std::vector<Label> base = gamma.labels();
      base.push_back(sender);
      const LabeledGraph structure = LabeledGraph::from_parts(ids, base, edges);
      if (!is_in_class(structure, cls)) continue;
      detail::for_each_choice(base, receivers, options,
                              [&](const std::vector<Label>& labels) { keep(structure.relabeled(labels)); });
    }
  }

  std::vector<LabeledGraph> result;
  for (auto& [key, g] : out) result.push_back(std::move(g));
  return result;
}

struct BackwardOptions {
  // Required for classes without a wqo guarantee; counts saturation rounds.
  std::optional<std::size_t> iteration_budget;
  unsigned threads = 1;
  // Keep the basis after every round in BackwardResult::trace.
  bool record_trace = false;
};

struct BackwardResult {
  Answer answer = Answer::no;
  // yes: a basis element with every label initial.
  std::optional<LabeledGraph> certificate;
  // The final basis; for no, the saturated fixpoint.
  Basis basis;
  std::size_t iterations = 0;
  std::vector<std::size_t> basis_size_history;
  std::vector<Basis> trace;
};

inline BackwardResult backward_cover(const Process& p, const State& target, const TopologyClass& cls,
                                     const BackwardOptions& options = {}) {
  if (!p.has_state(target)) throw ProtocolError("target " + target + " is not a protocol state");
  if (!cls.hereditary())
    throw Error("backward analysis needs a class closed under connected induced subgraphs, got " + cls.to_string());
  if (!cls.well_quasi_ordered() && !options.iteration_budget)
    throw Error("class " + cls.to_string() + " has no termination guarantee; an iteration budget is required");

  auto initial_only = [&](const LabeledGraph& g) {
    return std::all_of(g.labels().begin(), g.labels().end(), [&](const Label& l) { return p.is_initial(l); });
  };

  BackwardResult result;
  Basis basis = minimize({make_graph({target}, {})}, cls);
  std::vector<LabeledGraph> frontier = basis.elements();
  result.basis_size_history.push_back(basis.size());
  if (options.record_trace) result.trace.push_back(basis);

  auto certify = [&](const std::vector<LabeledGraph>& fresh) {
    for (const auto& g : fresh)
      if (initial_only(g)) {
        result.certificate = g;
        return true;
      }
    return false;
  };

  if (certify(frontier)) {
    result.answer = Answer::yes;
    result.basis = std::move(basis);
    return result;
  }

  while (true) {
    if (options.iteration_budget && result.iterations >= *options.iteration_budget) {
      result.answer = Answer::budget_exhausted;
      break;
    }
    ++result.iterations;

    std::vector<std::vector<LabeledGraph>> produced(frontier.size());
    if (options.threads <= 1 || frontier.size() <= 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) produced[i] = pre_basis(p, frontier[i], cls);
    } else {
      for (std::size_t start = 0; start < frontier.size(); start += options.threads) {
        const std::size_t end = std::min(frontier.size(), start + options.threads);
        std::vector<std::future<std::vector<LabeledGraph>>> jobs;
        for (std::size_t i = start; i < end; ++i)
          jobs.push_back(std::async(std::launch::async, [&, i] { return pre_basis(p, frontier[i], cls); }));
        for (std::size_t i = start; i < end; ++i) produced[i] = jobs[i - start].get();
      }
    }

    std::vector<LabeledGraph> candidates;
    for (auto& batch : produced)
      for (auto& g : batch)
        if (!basis.covers(g)) candidates.push_back(std::move(g));
    if (candidates.empty()) {
      result.answer = Answer::no;
      break;
    }

    std::vector<LabeledGraph> merged = basis.elements();
    merged.insert(merged.end(), candidates.begin(), candidates.end());
    Basis next = minimize(merged, cls);
    const std::unordered_set<std::string> old_forms(basis.forms().begin(), basis.forms().end());
    frontier.clear();
    for (std::size_t i = 0; i < next.size(); ++i)
      if (!old_forms.contains(next.forms()[i])) frontier.push_back(next.elements()[i]);
    basis = std::move(next);
    result.basis_size_history.push_back(basis.size());
    if (options.record_trace) result.trace.push_back(basis);
    if (certify(frontier)) {
      result.answer = Answer::yes;
      break;
    }
  }
  result.basis = std::move(basis);
  return result;
}

}  // namespace ahn
