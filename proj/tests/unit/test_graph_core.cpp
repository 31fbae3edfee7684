#include <doctest.h>

#include "support.hpp"
#include "chiral/errors.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"

using namespace chiral;

namespace {

// p_Γ of the combination, as a function: the cycle relations hold
// pointwise, so a valid rewrite must reproduce p_Γ exactly.
DiagRat as_function(const LineCombo& c, std::uint32_t n) {
  DiagRat total = DiagRat::constant(DiagRat::zvars(n), 0);
  for (const auto& [forest, coeff] : c.terms()) total += p_gamma(forest.graph()).scaled(coeff);
  return total;
}

// Underlying undirected graph is a forest. Graphs with any cycle, oriented
// or not, vanish modulo the relations while their p_Γ does not.
bool undirected_forest(const DiGraph& g) {
  std::vector<std::uint32_t> parent(g.n() + 1);
  for (std::uint32_t v = 0; v <= g.n(); ++v) parent[v] = v;
  auto root = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  for (const Edge& e : g.edges()) {
    const std::uint32_t a = root(e.from), b = root(e.to);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace

TEST_CASE("p_gamma is the product over edges") {
  const DiGraph g = parse_graph("n=3; edges=2->1,1->3");
  CHECK(p_gamma(g) == parse_diag_rat("-1*(z1-z2)^-1*(z1-z3)^-1", 3));
  CHECK(p_gamma(DiGraph(3, {})) == parse_diag_rat("1", 3));
}

TEST_CASE("cycles") {
  CHECK_FALSE(has_cycle(parse_graph("n=3; edges=1->2,1->3")));
  CHECK(has_cycle(parse_graph("n=2; edges=1->2,2->1")));
  const auto cycles = simple_cycles(parse_graph("n=4; edges=1->2,2->3,3->1,3->4,4->3"));
  CHECK(cycles.size() == 2);
  CHECK_THROWS(DiGraph(2, {{1, 1}}));
}

TEST_CASE("cycle relation: the sum over removed cycle edges vanishes") {
  for (const char* text : {"n=3; edges=1->2,2->3,3->1", "n=4; edges=1->2,2->3,3->4,4->1,1->3",
                           "n=4; edges=2->1,1->4,4->2,3->4"}) {
    const DiGraph g = parse_graph(text);
    for (const auto& cycle : simple_cycles(g)) {
      DiagRat total = DiagRat::constant(DiagRat::zvars(g.n()), 0);
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        total += p_gamma(g.without_edge({cycle[k], cycle[(k + 1) % cycle.size()]}));
      }
      CHECK(total.is_zero());
    }
  }
}

TEST_CASE("line forests") {
  CHECK(enumerate_line_forests(3).size() == 6);
  CHECK(enumerate_line_forests(4).size() == 24);
  const std::size_t by_p[] = {24, 50, 35, 10, 1};
  for (std::uint32_t p = 1; p <= 5; ++p) CHECK(enumerate_line_forests(5, p).size() == by_p[p - 1]);
  const LineForest f = parse_forest("1>3 | 2");
  CHECK(f.line_count() == 2);
  CHECK(f.line_of(3) == 0);
  CHECK(f.is_last(3));
  CHECK_FALSE(f.is_last(1));
  CHECK(to_string(f) == "1>3 | 2");
  CHECK_THROWS(parse_forest("2>1"));
}

TEST_CASE("decomposition examples") {
  const LineForest l123 = parse_forest("1>2>3"), l132 = parse_forest("1>3>2");
  LineCombo rev(3);
  rev.add(l123, -1);
  rev.add(l132, -1);
  CHECK(decompose_to_lines(parse_graph("n=3; edges=2->1,1->3")) == rev);
  CHECK(decompose_to_lines(parse_graph("n=3; edges=1->2,1->3")) == -rev);
  CHECK(decompose_to_lines(parse_graph("n=3; edges=1->2,2->3,3->1")).is_zero());
  CHECK(decompose_to_lines(parse_graph("n=3; edges=1->2,2->3")).coefficient(l123) == 1);
}

TEST_CASE("both decompositions agree and reproduce p_gamma on undirected forests") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (const DiGraph& g : enumerate_graphs(n, 1)) {
      const LineCombo a = decompose_to_lines(g);
      if (has_cycle(g)) {
        CHECK(a.is_zero());
        continue;
      }
      CHECK(a == rewrite_to_lines(g));
      if (undirected_forest(g)) {
        CHECK(as_function(a, n) == p_gamma(g));
      } else {
        CHECK(a.is_zero());
      }
    }
  }
}

TEST_CASE("line basis dimension is n!") {
  CHECK(relation_quotient_dimension(2, 1) == 2);
  CHECK(relation_quotient_dimension(3, 1) == 6);
  CHECK(relation_quotient_dimension(4, 1) == 24);
}

TEST_CASE("relabelling") {
  const DiGraph g = parse_graph("n=3; edges=1->2");
  const Permutation sigma = {2, 3, 1};
  CHECK(apply_perm(sigma, g) == parse_graph("n=3; edges=2->3"));
  CHECK(compose(sigma, Permutation{3, 1, 2}) == Permutation{1, 2, 3});
  CHECK_FALSE(is_permutation(std::vector<std::uint32_t>{1, 1, 2}));
}
