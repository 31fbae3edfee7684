#include <doctest.h>

#include <json.hpp>

#include "support.hpp"
#include "chiral/errors.hpp"
#include "chiral/parse.hpp"
#include "chiral/verify.hpp"

using namespace chiral;

TEST_CASE("parse examples") {
  const DiagRat f = elaborate(parse_expr("(z1-z2)^-1"), 2);
  CHECK(f == DiagRat::diagonal_power(DiagRat::zvars(2), zvar(1), zvar(2), -1));
  const DiagRat g = elaborate(parse_expr("(z1-z2)^-1 + (z2-z3)^-1"), 3);
  CHECK(g.divisor_count() == 2);
  CHECK(g.numerator() == parse_poly("z1-z3"));
  CHECK(elaborate(parse_expr("(z2-z1)^-1"), 2) == f.scaled(-1));
  CHECK(elaborate(parse_expr("2*(2*z1-2*z2)^-1"), 2) == f);
  CHECK(elaborate(parse_expr("-3/4"), 1) == DiagRat::constant(DiagRat::zvars(1), Scalar(-3, 4)));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(elaborate(parse_expr("z1^-1"), 1), ParseError);
  CHECK_THROWS_AS(elaborate(parse_expr("(z1+z2)^-1"), 2), ParseError);
  CHECK_THROWS_AS(elaborate(parse_expr("z3"), 2), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0"), ParseError);
  CHECK_THROWS_AS(parse_expr("z1 +"), ParseError);
  CHECK_THROWS_AS(parse_expr("(z1"), ParseError);
  try {
    parse_expr("z1 + * z2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_graph("n=2; edges=1->3"), ParseError);
  CHECK_THROWS_AS(parse_graph("n=2; edges=2->2"), ParseError);
  CHECK_THROWS_AS(parse_forest("1>2 | 2"), ParseError);
}

TEST_CASE("parse round trip") {
  for (const char* text : {"z1", "(z1-z2)^-2*z3 - 1/2", "((z1-z3)^2 + z2)*(z2-z3)^-1", "0", "z1*z2*z3 + (z1-z2)^-1",
                           "(z1-z2)^-1*(z1-z3)^-1*(z2-z3)^-1"}) {
    const ExprAst ast = parse_expr(text);
    CHECK(to_string(parse_expr(to_string(ast))) == to_string(ast));
    const DiagRat f = elaborate(ast, 3);
    CHECK(elaborate(parse_expr(to_string(f)), 3) == f);
  }
}

TEST_CASE("graph and line syntax") {
  const DiGraph g = parse_graph("n=3; edges=1->2,2->3");
  CHECK(g.edge_count() == 2);
  CHECK(to_string(g) == "n=3; edges=1->2,2->3");
  CHECK(parse_graph(to_string(g)) == g);
  CHECK(parse_graph("n=2; edges=") == DiGraph(2, {}));
  CHECK(parse_line("3>1>2") == std::vector<std::uint32_t>{3, 1, 2});
}

TEST_CASE("suite reports") {
  const SuiteReport lie = run_suite({"lie-dim", 5, kDefaultSeed, std::nullopt});
  CHECK(lie.cases_failed == 0);
  CHECK(lie.dims == std::vector<std::size_t>{1, 1, 2, 6, 24});
  const auto j = nlohmann::json::parse(to_json(lie));
  for (const char* key : {"suite", "n", "degree_r", "cases_total", "cases_failed", "first_counterexample", "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["dims"] == nlohmann::json::array({1, 1, 2, 6, 24}));
  CHECK(j["first_counterexample"].is_null());
  CHECK(to_text(lie).rfind("PASS", 0) == 0);

  CHECK(run_suite({"fourier-delta", 4, 1, std::nullopt}).cases_failed == 0);
  CHECK_THROWS_AS(run_suite({"nope", 3, 1, std::nullopt}), DomainError);
}

TEST_CASE("seeded suites are deterministic") {
  const SuiteReport a = run_suite({"residue-lemmas", 3, 42, std::nullopt});
  const SuiteReport b = run_suite({"residue-lemmas", 3, 42, std::nullopt});
  CHECK(a.cases_total == b.cases_total);
  CHECK(a.cases_failed == 0);
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  std::vector<int> out(50, 0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i));
  try {
    parallel_for(10, [](std::size_t i) {
      if (i == 3 || i == 7) throw DomainError(std::to_string(i));
    });
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "3");
  }
}
