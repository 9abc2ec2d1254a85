#include <catch_amalgamated.hpp>

#include "properties.hpp"

using namespace ahn;

namespace {

Process example() { return parse_protocol(props::data("example.ahn")); }

std::set<std::string> forms_of(const std::vector<LabeledGraph>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(canonical_form(g));
  return out;
}

}  // namespace

TEST_CASE("minimize") {
  const auto cls = TopologyClass::unrestricted();
  auto a = make_graph({"A"}, {});
  auto aa = make_graph({"A", "A"}, {{0, 1}});
  CHECK(forms_of(minimize({a, aa}, cls).elements()) == forms_of({a}));
  auto ab = make_graph({"A", "B"}, {{0, 1}});
  auto ba = make_graph({"B", "A"}, {{0, 1}});
  CHECK(minimize({ab, ba}, cls).size() == 1);
  auto tri = make_graph({"A", "A", "A"}, {{0, 1}, {1, 2}, {0, 2}});
  auto p3 = make_graph({"A", "A", "A"}, {{0, 1}, {1, 2}});
  CHECK(minimize({tri, p3}, cls).size() == 2);
  CHECK_THROWS_AS(minimize({make_graph({"A", "A"}, {})}, cls), GraphError);
  CHECK_THROWS_AS(minimize({p3}, TopologyClass::bounded_path(1)), GraphError);
}

TEST_CASE("pre_basis examples") {
  const auto cls = TopologyClass::bounded_path(2);
  auto d = make_graph({"D"}, {});
  auto pre = pre_basis(example(), d, cls);
  CHECK(forms_of(pre).contains(canonical_form(make_graph({"C"}, {}))));

  auto p = parse_protocol("protocol p { states A B C D; init A C; msgs m; A -!m-> B; C -?m-> D; }");
  auto pre2 = pre_basis(p, d, cls);
  CHECK(forms_of(pre2).contains(canonical_form(make_graph({"A", "C"}, {{0, 1}}))));

  auto idle = parse_protocol("protocol idle { states D; init D; }");
  CHECK(pre_basis(idle, d, cls).empty());
}

TEST_CASE("backward cover on the running example") {
  BackwardOptions opts;
  opts.record_trace = true;
  auto r = backward_cover(example(), "D", TopologyClass::bounded_path(1), opts);
  CHECK(r.answer == Answer::yes);
  REQUIRE(r.certificate);
  CHECK(*r.certificate == make_graph({"A"}, {}));
  CHECK(r.basis_size_history == std::vector<std::size_t>{1, 2, 3});
  REQUIRE(r.trace.size() == 3);
  CHECK(forms_of(r.trace[2].elements()) ==
        forms_of({make_graph({"D"}, {}), make_graph({"C"}, {}), make_graph({"A"}, {})}));

  auto bpc = backward_cover(example(), "D", TopologyClass::bpc(2));
  CHECK(bpc.answer == Answer::yes);
  CHECK(*bpc.certificate == make_graph({"A"}, {}));
}

TEST_CASE("backward fixpoint without an initial element") {
  auto p = parse_protocol("protocol p { states A B; init A; A -tau-> A; }");
  auto r = backward_cover(p, "B", TopologyClass::bounded_path(2));
  CHECK(r.answer == Answer::no);
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis.elements()[0] == make_graph({"B"}, {}));
}

TEST_CASE("backward cover through a fresh sender") {
  auto p = parse_protocol("protocol p { states A B C D; init A C; msgs m; A -!m-> B; C -?m-> D; }");
  auto r = backward_cover(p, "D", TopologyClass::bounded_path(2));
  CHECK(r.answer == Answer::yes);
  REQUIRE(r.certificate);
  CHECK(canonical_form(*r.certificate) == canonical_form(make_graph({"A", "C"}, {{0, 1}})));
}

TEST_CASE("backward preconditions") {
  auto p = example();
  CHECK_THROWS_AS(backward_cover(p, "D", TopologyClass::unrestricted()), Error);
  CHECK_THROWS_AS(backward_cover(p, "D", TopologyClass::bounded_diameter(2)), Error);
  CHECK_THROWS_AS(backward_cover(p, "X", TopologyClass::bounded_path(2)), ProtocolError);
  BackwardOptions budget;
  budget.iteration_budget = 5;
  CHECK(backward_cover(p, "D", TopologyClass::unrestricted(), budget).answer == Answer::yes);
  auto loop = parse_protocol("protocol loop { states A B C; init C; msgs m; A -!m-> A; B -?m-> B; }");
  budget.iteration_budget = 2;
  auto r = backward_cover(loop, "B", TopologyClass::unrestricted(), budget);
  CHECK((r.answer == Answer::budget_exhausted || r.answer == Answer::no));
}

TEST_CASE("pre_basis matches the brute-force predecessor check") {
  auto o = props::pre_oracle(1234, 15, TopologyClass::bounded_path(2));
  INFO(o.first_failure);
  CHECK(o.ok());
  auto b = props::pre_oracle(99, 8, TopologyClass::bpc(2), 2);
  INFO(b.first_failure);
  CHECK(b.ok());
}

TEST_CASE("forward and backward agree") {
  auto o = props::forward_backward_agreement(4321, 30, TopologyClass::bounded_path(2));
  INFO(o.first_failure);
  CHECK(o.ok());
}

TEST_CASE("saturation grows the upward closure and is deterministic") {
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto p = oracle::random_process(rng);
    const State target = p.states()[rng() % p.states().size()];
    BackwardOptions opts;
    opts.record_trace = true;
    auto r = backward_cover(p, target, TopologyClass::bounded_path(2), opts);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      for (const auto& e : r.trace[k - 1].elements()) CHECK(r.trace[k].covers(e));
    opts.threads = 3;
    auto again = backward_cover(p, target, TopologyClass::bounded_path(2), opts);
    CHECK(again.answer == r.answer);
    CHECK(again.basis.forms() == r.basis.forms());
    CHECK(again.basis_size_history == r.basis_size_history);
    for (std::size_t a = 0; a < r.basis.size(); ++a)
      for (std::size_t b = 0; b < r.basis.size(); ++b)
        if (a != b) CHECK_FALSE(embeds_induced(r.basis.elements()[a], r.basis.elements()[b]));
  }
}
