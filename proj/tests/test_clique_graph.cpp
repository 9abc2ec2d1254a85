#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "ahn/canonical.hpp"
#include "ahn/clique_graph.hpp"
#include "ahn/embedding.hpp"
#include "ahn/enumerate.hpp"
#include "ahn/graph_io.hpp"
#include "oracles.hpp"

using namespace ahn;

namespace {

LabeledGraph fig3() {
  std::ifstream in(std::string(AHN_DATA_DIR) + "/fig3.graph");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

LabeledGraph clique(std::size_t n, const Label& l = "A") {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return make_graph(std::vector<Label>(n, l), std::span<const Edge>(edges));
}

}  // namespace

TEST_CASE("clique graph of a triangle is a star") {
  auto k = build_clique_graph(clique(3));
  CHECK(k.clique_count() == 1);
  auto kg = k.as_graph();
  CHECK(kg.size() == 4);
  CHECK(kg.label(3) == kCliqueLabel);
  CHECK(kg.degree(3) == 3);
}

TEST_CASE("clique graph of the two-clique example") {
  auto g = fig3();
  auto k = build_clique_graph(g);
  REQUIRE(k.clique_count() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : k.cliques()) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{2, 4, 5});
  auto kg = k.as_graph();
  CHECK(longest_simple_path_length(kg) == 6);
  CHECK(oracle::longest_path(kg) == 6);
  CHECK_FALSE(is_bpc(g, 5));
  CHECK(is_bpc(g, 6));
  auto dot = clique_graph_to_dot(k);
  CHECK(dot.find("shape=box") != std::string::npos);
}

TEST_CASE("clique graph of a path on three vertices") {
  auto p3 = make_graph({"A", "A", "A"}, {{0, 1}, {1, 2}});
  auto k = build_clique_graph(p3);
  CHECK(k.clique_count() == 2);
  CHECK(longest_simple_path_length(k.as_graph()) == 4);
}

TEST_CASE("clique graph preconditions") {
  CHECK_THROWS_AS(build_clique_graph(make_graph({"A", "A"}, {})), GraphError);
  CHECK_THROWS_AS(build_clique_graph(make_graph({kCliqueLabel}, {})), GraphError);
}

TEST_CASE("bpc membership") {
  for (std::size_t n = 2; n <= 6; ++n) CHECK(is_bpc(clique(n), 2));
  CHECK_FALSE(is_bpc(clique(2), 1));
  CHECK(is_bpc(make_graph({"A"}, {}), 1));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(longest_simple_path_length(build_clique_graph(clique(n)).as_graph()) <= 3);
}

TEST_CASE("clique order examples") {
  auto one = make_graph({"A"}, {});
  auto edge = make_graph({"A", "A"}, {{0, 1}});
  auto tri = clique(3);
  auto p3 = make_graph({"A", "A", "A"}, {{0, 1}, {1, 2}});
  auto w = clique_order_leq(one, tri);
  REQUIRE(w);
  CHECK(is_valid_clique_witness(build_clique_graph(one), build_clique_graph(tri), *w));
  CHECK(clique_order_leq(edge, tri));
  CHECK_FALSE(clique_order_leq(p3, tri));
  CHECK(clique_order_leq(p3, p3));
}

TEST_CASE("clique order agrees with induced embedding on small graphs") {
  auto graphs = enumerate_connected_graphs(4, {"A", "B"}, TopologyClass::unrestricted());
  std::size_t pairs = 0;
  for (const auto& a : graphs)
    for (const auto& b : graphs) {
      const auto ka = build_clique_graph(a);
      const auto kb = build_clique_graph(b);
      auto w = clique_order_leq(ka, kb);
      CHECK(w.has_value() == oracle::embeds(a, b, true));
      if (w) CHECK(is_valid_clique_witness(ka, kb, *w));
      ++pairs;
    }
  CHECK(pairs > 1000);
}

TEST_CASE("K_G invariants on random connected graphs") {
  std::mt19937 rng(31);
  int checked = 0;
  while (checked < 200) {
    const std::size_t n = 1 + rng() % 7;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng() % 2) edges.emplace_back(u, v);
    auto g = make_graph(std::vector<Label>(n, "q"), std::span<const Edge>(edges));
    if (!is_connected(g)) continue;
    ++checked;
    auto k = build_clique_graph(g);
    auto kg = k.as_graph();
    // bipartite between the two parts
    for (auto [u, v] : kg.edges()) CHECK((u < n) != (v < n));
    std::set<std::vector<Vertex>> got(k.cliques().begin(), k.cliques().end());
    CHECK(got.size() == k.clique_count());
    CHECK(got == oracle::maximal_cliques(g));
    for (Vertex v = 0; v < n; ++v) CHECK_FALSE(k.cliques_of(v).empty());
    CHECK(k.reconstruct() == g);
    // two vertices adjacent to the same two clique vertices: the cliques differ
    for (std::size_t a = 0; a < k.clique_count(); ++a)
      for (std::size_t b = a + 1; b < k.clique_count(); ++b) CHECK(k.cliques()[a] != k.cliques()[b]);
  }
}
