#pragma once

// Forward explicit-state exploration.
//
// The topology of a run is fixed, so from a given initial configuration the
// reachable set is finite (at most |Q|^|V| label vectors) and is explored
// breadth-first. COVER is then approached by enumerating initial topologies
// up to isomorphism: bounded by a vertex count in general (a "no" is only
// "no within bounds"), or exactly for bounded diameter and degree, where the
// class itself is finite.

#include <cstddef>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ahn/enumerate.hpp"
#include "ahn/error.hpp"
#include "ahn/graph.hpp"
#include "ahn/protocol.hpp"
#include "ahn/semantics.hpp"
#include "ahn/topology.hpp"

namespace ahn {

enum class Answer { yes, no, no_within_bounds, budget_exhausted };

inline std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::no_within_bounds: return "no-within-bounds";
    case Answer::budget_exhausted: return "budget-exhausted";
  }
  return "";
}

struct CoverWitness {
  LabeledGraph initial;
  std::vector<ActionDescriptor> trace;
  LabeledGraph final_config;
};

struct CoverQuery {
  Process process;
  State target;
  TopologyClass topology_class = TopologyClass::unrestricted();
  std::size_t max_nodes = 1;
  std::optional<std::size_t> step_budget;  // total configurations visited
  unsigned threads = 1;
};

struct CoverResult {
  Answer answer = Answer::no_within_bounds;
  std::optional<CoverWitness> witness;
  std::size_t topologies_explored = 0;
  std::size_t states_visited = 0;
};

// Replays a trace; throws ActionError at the first step that does not apply.
inline LabeledGraph replay(const Process& p, const LabeledGraph& initial, const std::vector<ActionDescriptor>& trace) {
  const CompiledProcess compiled(p);
  auto labels = compiled.encode(initial);
  for (const auto& step : trace) labels = compiled.apply(initial, labels, step);
  return initial.relabeled(compiled.decode(labels));
}

namespace detail {

struct Exploration {
  std::optional<CoverWitness> witness;
  std::size_t states = 0;
  bool budget_hit = false;
};

inline std::string key_of(const CompiledProcess::Labels& labels) {
  return {reinterpret_cast<const char*>(labels.data()), labels.size() * sizeof(CompiledProcess::Code)};
}

// Breadth-first search from `initial`. Stops at the first configuration
// carrying `target` (if given), or once more than `budget` configurations
// have been discovered. `collect` receives every reachable configuration.
inline Exploration explore(const CompiledProcess& compiled, const LabeledGraph& initial,
                           std::optional<CompiledProcess::Code> target, std::optional<std::size_t> budget,
                           std::vector<LabeledGraph>* collect = nullptr) {
  struct Node {
    CompiledProcess::Labels labels;
    std::size_t parent;
    CompiledProcess::CodedAction action;
  };
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  Exploration result;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;

  auto covers = [&](const CompiledProcess::Labels& labels) {
    return target && std::find(labels.begin(), labels.end(), *target) != labels.end();
  };
  auto finish = [&](std::size_t index) {
    CoverWitness w{initial, {}, initial.relabeled(compiled.decode(nodes[index].labels))};
    for (std::size_t i = index; nodes[i].parent != kRoot; i = nodes[i].parent)
      w.trace.push_back(compiled.describe(nodes[i].action));
    std::reverse(w.trace.begin(), w.trace.end());
    result.witness = std::move(w);
  };

  nodes.push_back({compiled.encode(initial), kRoot, {}});
  seen.emplace(key_of(nodes.front().labels), 0);
  if (collect) collect->push_back(initial);
  if (covers(nodes.front().labels)) {
    result.states = 1;
    finish(0);
    return result;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    bool stop = false;
    const CompiledProcess::Labels current = nodes[head].labels;
    compiled.for_each_successor(initial, current,
                                [&](const CompiledProcess::Labels& next, const CompiledProcess::CodedAction& a) {
                                  if (stop) return;
                                  auto [it, fresh] = seen.emplace(key_of(next), nodes.size());
                                  if (!fresh) return;
                                  nodes.push_back({next, head, a});
                                  if (collect) collect->push_back(initial.relabeled(compiled.decode(next)));
                                  if (budget && nodes.size() > *budget) {
                                    result.budget_hit = true;
                                    stop = true;
                                  } else if (covers(next)) {
                                    finish(nodes.size() - 1);
                                    stop = true;
                                  }
                                });
    if (stop) break;
  }
  result.states = nodes.size();
  return result;
}

}  // namespace detail

// Every configuration reachable from gamma0, in breadth-first order.
inline std::vector<LabeledGraph> reachable_set(const Process& p, const LabeledGraph& gamma0) {
  const CompiledProcess compiled(p);
  std::vector<LabeledGraph> out;
  detail::explore(compiled, gamma0, std::nullopt, std::nullopt, &out);
  return out;
}

// Exploration from one fixed initial configuration.
inline CoverResult cover_from(const Process& p, const LabeledGraph& initial, const State& target,
                              std::optional<std::size_t> step_budget = std::nullopt) {
  if (!p.has_state(target)) throw ProtocolError("target " + target + " is not a protocol state");
  const CompiledProcess compiled(p);
  auto e = detail::explore(compiled, initial, static_cast<CompiledProcess::Code>(p.state_index(target)), step_budget);
  CoverResult r;
  r.topologies_explored = 1;
  r.states_visited = e.states;
  r.answer = e.witness ? Answer::yes : e.budget_hit ? Answer::budget_exhausted : Answer::no;
  r.witness = std::move(e.witness);
  return r;
}

namespace detail {

// Explores `topologies` (in order) and merges as if explored sequentially:
// the first witness wins, and the budget is charged in topology order.
// Returns true once the search is decided.
inline bool explore_batch(const CompiledProcess& compiled, const std::vector<LabeledGraph>& topologies,
                          CompiledProcess::Code target, std::optional<std::size_t> budget, unsigned threads,
                          CoverResult& result) {
  auto remaining = [&]() -> std::optional<std::size_t> {
    if (!budget) return std::nullopt;
    return *budget - std::min(*budget, result.states_visited);
  };
  auto merge = [&](Exploration& e) {
    ++result.topologies_explored;
    if (budget && result.states_visited + e.states > *budget) {
      result.states_visited = *budget;
      result.answer = Answer::budget_exhausted;
      return true;
    }
    result.states_visited += e.states;
    if (!e.witness) return false;
    result.answer = Answer::yes;
    result.witness = std::move(e.witness);
    return true;
  };

  if (threads <= 1) {
    for (const auto& g : topologies) {
      auto e = explore(compiled, g, target, remaining());
      if (merge(e)) return true;
    }
    return false;
  }
  const auto left = remaining();
  std::vector<Exploration> explored(topologies.size());
  for (std::size_t start = 0; start < topologies.size(); start += threads) {
    const std::size_t end = std::min(topologies.size(), start + threads);
    std::vector<std::future<Exploration>> jobs;
    for (std::size_t i = start; i < end; ++i)
      jobs.push_back(std::async(std::launch::async, [&compiled, &topologies, i, target, left] {
        return explore(compiled, topologies[i], target, left);
      }));
    for (std::size_t i = start; i < end; ++i) explored[i] = jobs[i - start].get();
  }
  for (auto& e : explored)
    if (merge(e)) return true;
  return false;
}

template <class Source>
CoverResult cover_over_topologies(const Process& p, const State& target, std::optional<std::size_t> budget,
                                  unsigned threads, Answer negative, Source&& for_each_topology) {
  if (!p.has_state(target)) throw ProtocolError("target " + target + " is not a protocol state");
  const CompiledProcess compiled(p);
  const auto code = static_cast<CompiledProcess::Code>(p.state_index(target));
  const std::size_t batch_size = threads <= 1 ? 1 : 8 * static_cast<std::size_t>(threads);
  CoverResult result;
  result.answer = negative;
  std::vector<LabeledGraph> batch;
  bool done = false;
  for_each_topology([&](const LabeledGraph& g) {
    batch.push_back(g);
    if (batch.size() < batch_size) return true;
    done = explore_batch(compiled, batch, code, budget, threads, result);
    batch.clear();
    return !done;
  });
  if (!done && !batch.empty()) explore_batch(compiled, batch, code, budget, threads, result);
  return result;
}

}  // namespace detail

// Bounded COVER: explores every connected initial topology with at most
// max_nodes vertices, labels in Q0, in the query's class. A negative answer
// is no_within_bounds, never a proof.
inline CoverResult forward_cover(const CoverQuery& q) {
  return detail::cover_over_topologies(
      q.process, q.target, q.step_budget, q.threads, Answer::no_within_bounds, [&](auto&& visit) {
        for_each_connected_graph(q.max_nodes, q.process.initial(), q.topology_class, visit);
      });
}

// Largest order of a connected graph with diameter <= k and maximum degree
// <= d: 1 + d * sum_{i<k} (d-1)^i.
inline std::size_t max_order_for_diameter_degree(std::size_t k, std::size_t d) {
  std::size_t total = 1;
  std::size_t layer = d;
  for (std::size_t i = 0; i < k; ++i) {
    total += layer;
    layer *= d == 0 ? 0 : d - 1;
  }
  return total;
}

inline constexpr std::size_t kDiameterDegreeNodeCap = 12;

// Exact COVER on the finite class of configurations with diameter <= k and
// degree <= d. Throws CapacityError when the class is too large to enumerate.
inline CoverResult bounded_diameter_degree_cover(const Process& p, const State& target, std::size_t k, std::size_t d,
                                                 std::size_t node_cap = kDiameterDegreeNodeCap,
                                                 unsigned threads = 1) {
  if (k == 0 || d == 0) throw Error("diameter and degree bounds must be positive");
  const std::size_t order = max_order_for_diameter_degree(k, d);
  if (order > node_cap)
    throw CapacityError("diameter " + std::to_string(k) + " / degree " + std::to_string(d) + " admits graphs with " +
                        std::to_string(order) + " vertices, above the cap of " + std::to_string(node_cap));
  const auto cls = TopologyClass::intersection({TopologyClass::bounded_diameter(k), TopologyClass::bounded_degree(d)});
  return detail::cover_over_topologies(p, target, std::nullopt, threads, Answer::no, [&](auto&& visit) {
    for_each_connected_graph(order, p.initial(), cls, visit);
  });
}

struct Rational {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// M(k,d) = (k(k-1)^d - 2) / (k-2) as an exact fraction; undefined at k = 2.
inline Rational moore_bound(std::int64_t k, std::int64_t d) {
  if (k == 2) throw Error("M(k,d) is undefined for k = 2");
  if (d < 0) throw Error("M(k,d) needs d >= 0");
  std::int64_t power = 1;
  for (std::int64_t i = 0; i < d; ++i) power *= k - 1;
  std::int64_t num = k * power - 2;
  std::int64_t den = k - 2;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

// Witness traces, one action per line:
//   tau <vertex> <rule-index>
//   bcast <vertex> <rule-index> {<vertex>:<state> ...}
inline std::string format_trace(const LabeledGraph& structure, const std::vector<ActionDescriptor>& trace) {
  std::ostringstream out;
  for (const auto& a : trace) {
    if (a.kind == ActionDescriptor::Kind::internal) {
      out << "tau " << structure.id(a.vertex) << ' ' << a.rule << '\n';
      continue;
    }
    out << "bcast " << structure.id(a.vertex) << ' ' << a.rule << " {";
    for (std::size_t i = 0; i < a.receivers.size(); ++i)
      out << (i ? " " : "") << structure.id(a.receivers[i].first) << ':' << a.receivers[i].second;
    out << "}\n";
  }
  return out.str();
}

inline std::vector<ActionDescriptor> parse_trace(std::string_view text, const LabeledGraph& structure) {
  std::vector<ActionDescriptor> trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto vertex = [&](const std::string& id) {
    auto v = structure.find(id);
    if (!v) throw ParseError("unknown vertex " + id, line_no, 1);
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string kind;
    if (!(words >> kind)) continue;
    ActionDescriptor a;
    std::string id;
    if (!(words >> id >> a.rule)) throw ParseError("expected: " + kind + " <vertex> <rule-index>", line_no, 1);
    a.vertex = vertex(id);
    if (kind == "tau") {
      a.kind = ActionDescriptor::Kind::internal;
    } else if (kind == "bcast") {
      a.kind = ActionDescriptor::Kind::broadcast;
      std::string rest;
      std::getline(words, rest);
      const auto open = rest.find('{');
      const auto close = rest.find('}');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("expected {<vertex>:<state> ...}", line_no, 1);
      std::istringstream choices(rest.substr(open + 1, close - open - 1));
      std::string choice;
      while (choices >> choice) {
        const auto colon = choice.find(':');
        if (colon == std::string::npos) throw ParseError("expected <vertex>:<state>, got " + choice, line_no, 1);
        a.receivers.emplace_back(vertex(choice.substr(0, colon)), choice.substr(colon + 1));
      }
      std::sort(a.receivers.begin(), a.receivers.end());
    } else {
      throw ParseError("unknown action '" + kind + "'", line_no, 1);
    }
    trace.push_back(std::move(a));
  }
  return trace;
}

}  // namespace ahn
