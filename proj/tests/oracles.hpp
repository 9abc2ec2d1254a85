#pragma once

// Brute-force reference implementations. Nothing here reuses the library's
// search code; only LabeledGraph and Process are shared as plain data.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ahn/graph.hpp"
#include "ahn/protocol.hpp"

namespace oracle {

using ahn::Label;
using ahn::LabeledGraph;
using ahn::Process;
using ahn::Vertex;

// Calls f(perm) for every permutation of 0..n-1.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    f(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// Calls f(map) for every injective map from 0..k-1 into 0..n-1.
template <class F>
bool any_injection(std::size_t k, std::size_t n, F&& f) {
  std::vector<std::size_t> map(k);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return f(map);
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      map[i] = x;
      const bool hit = self(self, i + 1);
      used[x] = false;
      if (hit) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

inline bool embeds(const LabeledGraph& small, const LabeledGraph& large, bool induced) {
  if (small.size() > large.size()) return false;
  return any_injection(small.size(), large.size(), [&](const std::vector<std::size_t>& f) {
    for (Vertex v = 0; v < small.size(); ++v)
      if (small.label(v) != large.label(f[v])) return false;
    for (Vertex u = 0; u < small.size(); ++u)
      for (Vertex v = u + 1; v < small.size(); ++v) {
        const bool a = small.adjacent(u, v);
        const bool b = large.adjacent(f[u], f[v]);
        if (induced ? a != b : (a && !b)) return false;
      }
    return true;
  });
}

inline bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return a.size() == b.size() && a.edge_count() == b.edge_count() && embeds(a, b, true);
}

// Lexicographically smallest (labels, adjacency) encoding over all vertex
// permutations.
inline std::string min_encoding(const LabeledGraph& g) {
  std::string best;
  bool first = true;
  for_each_permutation(g.size(), [&](const std::vector<std::size_t>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += g.label(p[i]) + ",";
    s += "|";
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) s += g.adjacent(p[i], p[j]) ? '1' : '0';
    if (first || s < best) best = s;
    first = false;
  });
  return best;
}

inline bool connected(const LabeledGraph& g) {
  if (g.size() == 0) return true;
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u = 0; u < g.size(); ++u)
      if (g.adjacent(v, u) && !seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

// Longest simple path by extending every vertex sequence.
inline std::size_t longest_path(const LabeledGraph& g) {
  std::size_t best = 0;
  std::vector<bool> used(g.size(), false);
  auto rec = [&](auto&& self, Vertex v, std::size_t len) -> void {
    best = std::max(best, len);
    for (Vertex u = 0; u < g.size(); ++u)
      if (!used[u] && g.adjacent(v, u)) {
        used[u] = true;
        self(self, u, len + 1);
        used[u] = false;
      }
  };
  for (Vertex v = 0; v < g.size(); ++v) {
    used[v] = true;
    rec(rec, v, 0);
    used[v] = false;
  }
  return best;
}

// Floyd-Warshall; assumes g connected.
inline std::size_t diameter(const LabeledGraph& g) {
  const std::size_t n = g.size();
  const std::size_t inf = n + 1;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) d[u][v] = u == v ? 0 : g.adjacent(u, v) ? 1 : inf;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::size_t best = 0;
  for (auto& row : d)
    for (auto x : row) best = std::max(best, x);
  return best;
}

inline std::size_t max_degree(const LabeledGraph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::size_t d = 0;
    for (Vertex u = 0; u < g.size(); ++u) d += g.adjacent(u, v) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

// Maximal cliques by checking every vertex subset.
inline std::set<std::vector<Vertex>> maximal_cliques(const LabeledGraph& g) {
  const std::size_t n = g.size();
  std::vector<unsigned> cliques;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u)
      for (Vertex v = u + 1; v < n && ok; ++v)
        if ((mask >> u & 1) && (mask >> v & 1) && !g.adjacent(u, v)) ok = false;
    if (ok) cliques.push_back(mask);
  }
  std::set<std::vector<Vertex>> out;
  for (unsigned c : cliques) {
    bool maximal = true;
    for (unsigned d : cliques)
      if (d != c && (c & d) == c) maximal = false;
    if (!maximal) continue;
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if (c >> v & 1) vs.push_back(v);
    out.insert(vs);
  }
  return out;
}

// All connected graphs on exactly n vertices (labels from `labels`) that
// pass `keep`, one per isomorphism class, keyed by min_encoding.
template <class Keep>
std::map<std::string, LabeledGraph> connected_graphs(std::size_t n, const std::vector<Label>& labels, Keep&& keep) {
  std::map<std::string, LabeledGraph> out;
  std::vector<ahn::Edge> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::size_t labelings = 1;
  for (std::size_t i = 0; i < n; ++i) labelings *= labels.size();
  for (unsigned long mask = 0; mask < (1ul << all.size()); ++mask) {
    std::vector<ahn::Edge> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1) edges.push_back(all[i]);
    for (std::size_t code = 0; code < labelings; ++code) {
      std::vector<Label> ls;
      for (std::size_t i = 0, c = code; i < n; ++i, c /= labels.size()) ls.push_back(labels[c % labels.size()]);
      auto g = ahn::make_graph(ls, std::span<const ahn::Edge>(edges));
      if (!connected(g) || !keep(g)) continue;
      auto key = min_encoding(g);
      out.emplace(std::move(key), std::move(g));
    }
  }
  return out;
}

// The two transition bullets read literally: every label function L' is
// tested against the definition.
inline std::set<std::vector<Label>> successors(const Process& p, const LabeledGraph& g) {
  const std::size_t n = g.size();
  const auto& states = p.states();
  auto receives = [&](const Label& q, const std::string& a) {
    std::set<Label> out;
    for (const auto& r : p.rules())
      if (r.kind == ahn::ActionKind::receive && r.from == q && r.message == a) out.insert(r.to);
    return out;
  };
  std::set<std::vector<Label>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= states.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Label> next;
    for (std::size_t i = 0, c = code; i < n; ++i, c /= states.size()) next.push_back(states[c % states.size()]);
    bool ok = false;
    for (Vertex v = 0; v < n && !ok; ++v) {
      for (const auto& r : p.rules()) {
        if (r.from != g.label(v) || r.to != next[v]) continue;
        if (r.kind == ahn::ActionKind::tau) {
          bool rest = true;
          for (Vertex u = 0; u < n; ++u)
            if (u != v && next[u] != g.label(u)) rest = false;
          if (rest) ok = true;
        } else if (r.kind == ahn::ActionKind::broadcast) {
          bool rest = true;
          for (Vertex u = 0; u < n; ++u) {
            if (u == v) continue;
            const auto targets = receives(g.label(u), r.message);
            if (g.adjacent(u, v) && !targets.empty()) {
              if (!targets.contains(next[u])) rest = false;
            } else if (next[u] != g.label(u)) {
              rest = false;
            }
          }
          if (rest) ok = true;
        }
      }
    }
    if (ok) out.insert(next);
  }
  return out;
}

// Random process over states s0..s(q-1) and messages m0..m(m-1).
inline Process random_process(std::mt19937& rng, std::size_t max_states = 3, std::size_t max_messages = 2,
                              std::size_t max_rules = 6) {
  std::uniform_int_distribution<std::size_t> qn(1, max_states), mn(1, max_messages), rn(0, max_rules);
  const std::size_t q = qn(rng), m = mn(rng), r = rn(rng);
  std::vector<ahn::State> states;
  std::vector<ahn::Message> msgs;
  for (std::size_t i = 0; i < q; ++i) states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < m; ++i) msgs.push_back("m" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick_q(0, q - 1), pick_m(0, m - 1), pick_k(0, 2);
  std::vector<ahn::Rule> rules;
  for (std::size_t i = 0; i < r; ++i) {
    const auto kind = static_cast<ahn::ActionKind>(pick_k(rng));
    rules.push_back({states[pick_q(rng)], kind, kind == ahn::ActionKind::tau ? "" : msgs[pick_m(rng)], states[pick_q(rng)]});
  }
  std::vector<ahn::State> init;
  for (const auto& s : states)
    if (rng() % 2) init.push_back(s);
  if (init.empty()) init.push_back(states[pick_q(rng)]);
  return Process("random", states, msgs, rules, init);
}

}  // namespace oracle
