#include <catch_amalgamated.hpp>

#include "ahn/canonical.hpp"
#include "ahn/enumerate.hpp"
#include "ahn/forward.hpp"
#include "oracles.hpp"

using namespace ahn;

namespace {

std::size_t brute_count(std::size_t max_nodes, const std::vector<Label>& labels, const TopologyClass& c) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= max_nodes; ++n)
    total += oracle::connected_graphs(n, labels, [&](const LabeledGraph& g) { return is_in_class(g, c); }).size();
  return total;
}

}  // namespace

TEST_CASE("small enumeration counts") {
  const auto any = TopologyClass::unrestricted();
  CHECK(enumerate_connected_graphs(2, {"q"}, any).size() == 2);
  CHECK(enumerate_connected_graphs(4, {"q"}, any).size() == 10);
  CHECK(enumerate_connected_graphs(3, {"q"}, TopologyClass::bounded_path(1)).size() == 2);
}

TEST_CASE("enumeration matches brute force over edge subsets") {
  const std::vector<TopologyClass> classes{
      TopologyClass::unrestricted(), TopologyClass::bounded_path(2), TopologyClass::bpc(2),
      TopologyClass::parse("diameter:1+degree:2"), TopologyClass::bounded_diameter(2)};
  for (const auto& c : classes) {
    for (const std::vector<Label>& labels : {std::vector<Label>{"q"}, std::vector<Label>{"A", "B"}}) {
      const std::size_t n = labels.size() == 1 ? 4 : 3;
      auto got = enumerate_connected_graphs(n, labels, c);
      CHECK(got.size() == brute_count(n, labels, c));
      std::set<std::string> forms;
      for (const auto& g : got) {
        CHECK(is_connected(g));
        CHECK(is_in_class(g, c));
        forms.insert(canonical_form(g));
      }
      CHECK(forms.size() == got.size());
    }
  }
}

TEST_CASE("diameter one, degree two: vertex, edge, triangle") {
  auto got = enumerate_connected_graphs(max_order_for_diameter_degree(1, 2), {"q"}, TopologyClass::parse("diameter:1+degree:2"));
  REQUIRE(got.size() == 3);
  CHECK(got[0].size() == 1);
  CHECK(got[1].size() == 2);
  CHECK(got[2].size() == 3);
  CHECK(got[2].edge_count() == 3);
}

TEST_CASE("enumeration order is by size then form") {
  auto got = enumerate_connected_graphs(4, {"A", "B"}, TopologyClass::unrestricted());
  for (std::size_t i = 1; i < got.size(); ++i) {
    const auto a = std::make_pair(got[i - 1].size(), canonical_form(got[i - 1]));
    const auto b = std::make_pair(got[i].size(), canonical_form(got[i]));
    CHECK(a < b);
  }
}

TEST_CASE("enumeration errors and early stop") {
  CHECK_THROWS_AS(enumerate_connected_graphs(0, {"q"}, TopologyClass::unrestricted()), Error);
  CHECK_THROWS_AS(enumerate_connected_graphs(5, {"q"}, TopologyClass::unrestricted(), 5), CapacityError);
  std::size_t visits = 0;
  for_each_connected_graph(4, {"q"}, TopologyClass::unrestricted(), [&](const LabeledGraph&) { return ++visits < 3; });
  CHECK(visits == 3);
}
