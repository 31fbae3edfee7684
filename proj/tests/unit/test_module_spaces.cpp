#include <doctest.h>

#include "support.hpp"
#include "chiral/errors.hpp"
#include "chiral/parse.hpp"

using namespace chiral;

namespace {

const FreeDModule& M() {
  static const FreeDModule m = parse_module("# test module\na:0\nb:1:odd\n");
  return m;
}

VPoly V(const std::string& text) { return parse_vpoly(text, M()); }

}  // namespace

TEST_CASE("module text format") {
  CHECK(M().rank() == 2);
  CHECK(M().degree(1) == 1);
  CHECK(M().generator(1).odd);
  CHECK(M().find("b") == 1u);
  CHECK_FALSE(M().find("c").has_value());
  CHECK(parse_module(to_string(M())) == M());
  CHECK_THROWS(parse_module("a:x\n"));
}

TEST_CASE("tensor keys") {
  CHECK(tensor_keys(M(), 2, 0).size() == 4);
  CHECK(tensor_keys(M(), 2, 1).size() == 12);
  CHECK(tensor_keys(M(), 3, 1).size() == 32);
  const TensorKey k = parse_tensor_key("a, d^2 b", M());
  CHECK(key_dpow(k) == 2);
  CHECK(key_degree(M(), k) == 1);
  CHECK(to_string(M(), k) == "a, d^2 b");
  CHECK(parse_tensor_key("d b, a", M()) == parse_tensor_key("d*b, a", M()));
}

TEST_CASE("partials on tensors") {
  const TensorElem v = TensorElem::basis(parse_tensor_key("a, b", M()));
  const TensorElem dv = v.partial(2, 2);
  CHECK(dv == TensorElem::basis(parse_tensor_key("a, d^2 b", M())));
  // (x1 + x2)^2 v = ∂1² v + 2 ∂1∂2 v + ∂2² v
  const MPoly x = MPoly::variable(xvar(1)) + MPoly::variable(xvar(2));
  TensorElem expected = v.partial(1, 2);
  expected += v.partial(1).partial(2).scaled(2);
  expected += v.partial(2, 2);
  CHECK(apply_poly_partials(x * x, v) == expected);
}

TEST_CASE("quotient normal form") {
  // y2 = -d - y1 in V[y1,y2]/<∂ + y1 + y2>
  const QuotElem q(lambda_world(2), V("l2*a"));
  CHECK(q.rep() == V("-l1*a - d*a"));
  CHECK(QuotElem(lambda_world(2), V("d*a + l1*a + l2*a")).is_zero());
  // V/∂V
  CHECK(QuotElem(lambda_world(0), V("d*b")).is_zero());
  CHECK(canonicalize(V("L1*b"), biglambda_world(1)) == V("-d*b"));
  // the class does not depend on the representative
  const VPoly rep = V("l1^2*a + l2*b");
  const VPoly shift = V("d*a + l1*a + l2*a").mul(parse_poly("l1*l2 + 3"));
  CHECK(QuotElem(lambda_world(2), rep) == QuotElem(lambda_world(2), rep + shift));
}

TEST_CASE("difference of spectral derivatives is well defined") {
  const VPoly rep = V("l1^2*l2*a + l3*b");
  const VPoly shift = V("d*a + l1*a + l2*a + l3*a").mul(parse_poly("l1*l3"));
  const QuotElem x(lambda_world(3), rep), y(lambda_world(3), rep + shift);
  for (std::uint32_t i = 1; i <= 3; ++i) {
    for (std::uint32_t j = 1; j <= 3; ++j) CHECK(x.diff_difference(j, i) == y.diff_difference(j, i));
  }
  // on a representative free of l3 the formula is the plain difference
  const QuotElem z(lambda_world(3), V("l1^2*l2*a"));
  CHECK(z.diff_difference(2, 1) == QuotElem(lambda_world(3), V("l1^2*a - 2*l1*l2*a")));
}

TEST_CASE("degree projection") {
  const VPoly v = V("l1*a + b + d*b");
  CHECK(v.project_degree(M(), 1) == V("b + d*b"));
  CHECK(v.project_degree(M(), 0) == V("l1*a"));
}
