#include <catch_amalgamated.hpp>

#include <random>

#include "ahn/canonical.hpp"
#include "ahn/graph.hpp"
#include "oracles.hpp"

using namespace ahn;

namespace {

LabeledGraph permuted(const LabeledGraph& g, const std::vector<std::size_t>& perm) {
  // vertex v of g becomes vertex perm[v]
  std::vector<Label> labels(g.size());
  for (Vertex v = 0; v < g.size(); ++v) labels[perm[v]] = g.label(v);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return make_graph(labels, std::span<const Edge>(edges));
}

}  // namespace

TEST_CASE("isomorphic orderings share a form") {
  auto tri = make_graph({"q", "q", "q"}, {{0, 1}, {1, 2}, {0, 2}});
  auto tri2 = make_graph({"q", "q", "q"}, {{2, 1}, {0, 2}, {1, 0}});
  CHECK(canonical_form(tri) == canonical_form(tri2));
  auto p3 = make_graph({"q", "q", "q"}, {{0, 1}, {1, 2}});
  CHECK(canonical_form(tri) != canonical_form(p3));

  auto abc = make_graph({"A", "B", "C"}, {{0, 1}, {1, 2}});
  const auto form = canonical_form(abc);
  int seen = 0;
  oracle::for_each_permutation(3, [&](const std::vector<std::size_t>& p) {
    CHECK(canonical_form(permuted(abc, p)) == form);
    ++seen;
  });
  CHECK(seen == 6);
}

TEST_CASE("canonical graph is isomorphic to its source and stable") {
  std::mt19937 rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Label> ls;
    for (std::size_t k = 0; k < n; ++k) ls.push_back(rng() % 2 ? "A" : "B");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng() % 2) edges.emplace_back(u, v);
    auto g = make_graph(ls, std::span<const Edge>(edges));
    auto c = canonical_graph(g);
    CHECK(oracle::isomorphic(g, c));
    CHECK(canonical_graph(c) == c);
    CHECK(canonical_form(c) == canonical_form(g));
  }
}

TEST_CASE("form equality coincides with isomorphism for all graphs up to 5 vertices") {
  // Every labeled graph on up to 4 vertices over two labels, plus every
  // unlabeled graph on 5 vertices, compared pairwise within each size.
  auto all_graphs = [](std::size_t n, const std::vector<Label>& labels) {
    std::vector<LabeledGraph> out;
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::size_t labelings = 1;
    for (std::size_t i = 0; i < n; ++i) labelings *= labels.size();
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask)
      for (std::size_t code = 0; code < labelings; ++code) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if (mask >> i & 1) edges.push_back(pairs[i]);
        std::vector<Label> ls;
        for (std::size_t i = 0, c = code; i < n; ++i, c /= labels.size()) ls.push_back(labels[c % labels.size()]);
        out.push_back(make_graph(ls, std::span<const Edge>(edges)));
      }
    return out;
  };
  std::size_t mismatches = 0;
  std::size_t classes_checked = 0;
  auto check = [&](const std::vector<LabeledGraph>& graphs) {
    std::map<std::string, std::string> form_to_encoding;
    std::map<std::string, std::string> encoding_to_form;
    for (const auto& g : graphs) {
      const auto form = canonical_form(g);
      const auto enc = oracle::min_encoding(g);
      auto [a, fresh_a] = form_to_encoding.emplace(form, enc);
      auto [b, fresh_b] = encoding_to_form.emplace(enc, form);
      if (a->second != enc || b->second != form) ++mismatches;
    }
    classes_checked += form_to_encoding.size();
  };
  for (std::size_t n = 1; n <= 4; ++n) check(all_graphs(n, {"A", "B"}));
  check(all_graphs(5, {"q"}));
  CHECK(mismatches == 0);
  CHECK(classes_checked > 100);
}
