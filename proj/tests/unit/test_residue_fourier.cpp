#include <doctest.h>

#include <random>

#include "chiral/convolution.hpp"
#include "chiral/errors.hpp"
#include "chiral/fourier.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"
#include "chiral/residue.hpp"
#include "support.hpp"

using namespace chiral;

namespace {

DiagRat D(const std::string& text, std::uint32_t n) { return parse_diag_rat(text, n); }

DiagRat W(const std::string& text, std::uint32_t p) { return elaborate(parse_expr(text), DiagRat::wvars(p)); }

MPoly P(const std::string& text) { return parse_poly(text); }

DiagRat random_function(std::mt19937_64& rng, std::uint32_t n, bool ti) {
  std::uniform_int_distribution<int> e(-2, 1), c(-3, 3), pick(1, static_cast<int>(n));
  const auto vars = DiagRat::zvars(n);
  DiagRat f = DiagRat::constant(vars, 0);
  for (int term = 0; term < 2; ++term) {
    DiagRat t = DiagRat::constant(vars, c(rng));
    for (std::uint32_t i = 1; i <= n; ++i) {
      for (std::uint32_t j = i + 1; j <= n; ++j) t = t * DiagRat::diagonal_power(vars, zvar(i), zvar(j), e(rng));
    }
    if (!ti) t = t.mul_poly(MPoly::variable(zvar(static_cast<std::uint32_t>(pick(rng)))));
    f += t;
  }
  return f;
}

}  // namespace

TEST_CASE("residue examples") {
  CHECK(residue(D("(z1-z2)^-1", 2), 1, 2) == D("1", 2).substitute_equal(zvar(1), zvar(2)));
  CHECK(residue(D("(z1-z2)^2", 2), 1, 2).is_zero());
  const DiagRat r = residue(D("(z1-z2)^-2*(z1-z3)^-1", 3), 1, 2);
  CHECK(to_string(r) == "-(z2-z3)^-2");
  CHECK_FALSE(r.is_live(zvar(1)));
}

TEST_CASE("residue agrees with a series expansion at random points") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 150; ++round) {
    const DiagRat f = random_function(rng, 3, round % 2 == 0);
    for (auto [i, j] : {std::pair{1u, 2u}, {2u, 3u}, {3u, 1u}, {1u, 3u}}) {
      const DiagRat r = residue(f, i, j);
      const auto at = testing::random_point(f.vars(), rng);
      CHECK(testing::eval_at(r, at) == testing::series_residue(f, zvar(i), zvar(j), at));
    }
  }
}

TEST_CASE("gamma residue of p_gamma is a delta") {
  const LineForest a = parse_forest("1>2 | 3"), b = parse_forest("1>3 | 2");
  CHECK(gamma_residue(p_gamma(b.graph()), a).is_zero());
  CHECK(gamma_residue(p_gamma(a.graph()), a) == DiagRat::constant(DiagRat::wvars(2), 1));
}

TEST_CASE("fourier examples") {
  const LineForest line = parse_forest("1>2");
  PolyOverDiagRat one(DiagRat::wvars(1));
  one.add_term(Monomial(), DiagRat::constant(DiagRat::wvars(1), 1));
  CHECK(fourier(D("(z1-z2)^-1", 2), line) == one);
  PolyOverDiagRat minus_lambda(DiagRat::wvars(1));
  minus_lambda.add_term(Monomial::of(lamvar(1)), DiagRat::constant(DiagRat::wvars(1), -1));
  CHECK(fourier(D("(z1-z2)^-2", 2), line) == minus_lambda);
  // coefficient of z12^2 in e^{-z12 λ1} is λ1^2/2
  PolyOverDiagRat half(DiagRat::wvars(1));
  half.add_term(Monomial::of(lamvar(1), 2), DiagRat::constant(DiagRat::wvars(1), Scalar(1, 2)));
  CHECK(fourier(D("(z1-z2)^-3", 2), line) == half);
}

TEST_CASE("fourier delta on n = 3") {
  const auto forests = enumerate_line_forests(3);
  for (const LineForest& g : forests) {
    for (const LineForest& h : forests) {
      if (g.edge_count() != h.edge_count()) continue;
      const PolyOverDiagRat t = fourier(p_gamma(h.graph()), g);
      if (g == h) {
        REQUIRE(t.terms().size() == 1);
        CHECK(t.coefficient(Monomial()) == DiagRat::constant(DiagRat::wvars(g.line_count()), 1));
      } else {
        CHECK(t.is_zero());
      }
    }
  }
}

TEST_CASE("fourier of a translation invariant function on the full line is constant in w") {
  std::mt19937_64 rng(5);
  const LineForest line = parse_forest("1>3>2");
  for (int round = 0; round < 40; ++round) {
    const PolyOverDiagRat t = fourier(random_function(rng, 3, true), line);
    for (const auto& [m, c] : t.terms()) CHECK(c.is_constant());
  }
}

TEST_CASE("fourier derivative rule") {
  std::mt19937_64 rng(9);
  const LineForest forest = parse_forest("1>2 | 3");
  for (int round = 0; round < 30; ++round) {
    const DiagRat f = random_function(rng, 3, round % 3 == 0);
    const PolyOverDiagRat t = fourier(f, forest);
    for (std::uint32_t i = 1; i <= 3; ++i) {
      const PolyOverDiagRat lhs = fourier(diff_z(f, i), forest);
      PolyOverDiagRat rhs(t.coeff_vars());
      if (forest.is_last(i)) {
        const std::uint32_t l = forest.line_of(i);
        MPoly lambdas;
        // λ of the last vertex never enters the kernel
        for (std::uint32_t v : forest.lines()[l]) {
          if (v != i) lambdas += MPoly::variable(lamvar(v));
        }
        rhs += t.diff_coeff(wvar(l + 1));
        rhs += t.mul_lambda(lambdas).scaled(-1);
      } else {
        rhs = t.mul_lambda(MPoly::variable(lamvar(i)));
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("iota expansion is the geometric series") {
  const LaurentExpansion e = iota_expand(W("(w1-w2)^-1", 2), {-1, 3});
  CHECK(e.terms.size() == 4);
  for (long m = 0; m <= 3; ++m) CHECK(e.terms.at({-1 - m, m}) == 1);
  const LaurentExpansion e2 = iota_expand(W("(w1-w2)^-2", 2), {-2, 3});
  for (long m = 0; m <= 3; ++m) CHECK(e2.terms.at({-2 - m, m}) == m + 1);
  const LaurentExpansion poly = iota_expand(W("w1^2*w2", 2), {5, 5});
  CHECK(poly.terms.size() == 1);
  CHECK(poly.terms.at({2, 1}) == 1);
}

TEST_CASE("convolution examples") {
  CHECK(convolve(W("1", 2), P("L1^2*L2 + 3*L2")) == P("L1^2*L2 + 3*L2"));
  CHECK(convolve(W("(w1-w2)^-1", 2), P("L1*L2")) == P("-1/2*L1^2*L2 - 1/6*L1^3"));
  // not an action: associativity fails on (w1-w2)^-1 and (w1-w2)
  const MPoly inner = convolve(W("w1-w2", 2), P("1"));
  CHECK(convolve(W("(w1-w2)^-1", 2), inner).is_zero());
  CHECK(convolve(W("(w1-w2)^-1*(w1-w2)", 2), P("1")) == P("1"));
  // passive coefficients; w1 lowers the divided power L1^2 = 2 L1^(2)
  CHECK(convolve(W("w1", 1), P("L1^2*l3")) == P("-2*L1*l3"));
}

TEST_CASE("convolution identities on random monomials") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> ex(-2, 2), qx(0, 3);
  for (int round = 0; round < 100; ++round) {
    const std::uint32_t p = 2;
    DiagRat F = DiagRat::constant(DiagRat::wvars(p), 1);
    F = F * DiagRat::diagonal_power(DiagRat::wvars(p), wvar(1), wvar(2), ex(rng));
    F = F.mul_poly(MPoly::monomial(Monomial::from_factors({{wvar(1), qx(rng)}, {wvar(2), qx(rng)}})));
    MPoly Q = MPoly::monomial(Monomial::from_factors({{biglamvar(1), qx(rng)}, {biglamvar(2), qx(rng)}}));
    Q.add_term(Monomial::of(biglamvar(2), static_cast<std::uint32_t>(qx(rng))), 2);
    for (std::uint32_t l = 1; l <= p; ++l) {
      const MPoly w = MPoly::variable(wvar(l));
      const MPoly L = MPoly::variable(biglamvar(l));
      CHECK(convolve(F.mul_poly(w), Q) == -convolve(F, Q).diff(biglamvar(l)));
      CHECK(L * convolve(F, Q) - convolve(F, L * Q) == convolve(F.diff(wvar(l)), Q));
    }
  }
}

TEST_CASE("convolution asymmetry witness") {
  // F = w1^-1, Q = 1: F*(dQ/dL1) = 0 while d/dL1 (F*Q) = d/dL1 (-L1) = -1
  LaurentExpansion F;
  F.p = 1;
  F.caps = {1};
  F.terms[{-1}] = 1;
  const MPoly Q(1);
  CHECK(convolve(F, Q) == P("-L1"));
  CHECK(convolve(F, Q.diff(biglamvar(1))).is_zero());
  CHECK(convolve(F, Q).diff(biglamvar(1)) == MPoly(-1));
}
