#include <doctest.h>

#include <random>

#include "chiral/errors.hpp"
#include "chiral/iso_maps.hpp"
#include "chiral/parse.hpp"

using namespace chiral;

namespace {

std::shared_ptr<const FreeDModule> module_ab() {
  static const auto m = std::make_shared<const FreeDModule>(parse_module("a:0\nb:1\n"));
  return m;
}

std::shared_ptr<const FreeDModule> module_a() {
  static const auto m = std::make_shared<const FreeDModule>(parse_module("a:0\n"));
  return m;
}

QuotElem Q(const FreeDModule& m, const std::string& text, SpectralWorld w) { return QuotElem(w, parse_vpoly(text, m)); }

}  // namespace

TEST_CASE("spanning inputs") {
  CHECK(spanning_functions(2).size() == 7);
  CHECK(spanning_functions(3).size() == 38);
  CHECK(spanning_keys(*module_ab(), 2).size() == 12);
  CHECK(spanning_keys(*module_ab(), 3).size() == 32);
}

TEST_CASE("inverse map by hand for n = 2") {
  // Y^{1->2}(a ⊗ a) = a, Y^{1|2} = 0
  ClassicalOp Y(module_a(), 2, 1);
  Y.set(parse_forest("1>2"), parse_tensor_key("a, a", *module_a()), parse_vpoly("a", *module_a()));
  REQUIRE(validate_classical(Y).ok());
  const ChiralOp X = inverse_map(Y);
  const TensorKey aa = parse_tensor_key("a, a", *module_a());
  const auto F = [](const char* t) { return parse_diag_rat(t, 2); };
  const SpectralWorld w = lambda_world(2);
  CHECK(X(aa, F("1")).is_zero());
  CHECK(X(aa, F("(z1-z2)^-1")) == Q(*module_a(), "a", w));
  // F = -λ1 and Y(∂1 a ⊗ a) = 0
  CHECK(X(aa, F("(z1-z2)^-2")) == Q(*module_a(), "-l1*a", w));
  CHECK(X(aa, F("(z1-z2)^-3")) == Q(*module_a(), "1/2*l1^2*a", w));
  CHECK(X(aa, F("(z1-z2)^2")).is_zero());
  CHECK_THROWS_AS(X(aa, F("z1*(z1-z2)^-1")), DomainError);
}

TEST_CASE("round trip on random operations, n = 2") {
  std::mt19937_64 rng(17);
  for (int r = 0; r <= 2; ++r) {
    for (int round = 0; round < 3; ++round) {
      const ClassicalOp Y = random_classical(module_ab(), 2, r, rng);
      REQUIRE(validate_classical(Y).ok());
      const ChiralOp X = inverse_map(Y);
      const auto keys = spanning_keys(*module_ab(), 2);
      const auto functions = spanning_functions(2);
      CHECK(check_sesquilinearity(X, keys, functions).ok());
      CHECK(check_well_definedness(Y, rng, keys, functions).ok());
      CHECK(check_filtration(X, r, keys, functions).ok());
      const ForwardResult back = forward_map(X, r);
      CHECK(back.ok());
      CHECK(compare_classical(Y, back.op).ok());
      for (const TensorKey& key : keys) {
        for (long m = -3; m <= 3; ++m) {
          const DiagRat f = DiagRat::diagonal_power(DiagRat::zvars(2), zvar(1), zvar(2), static_cast<int>(m));
          CHECK(X(key, f) == n2_closed_form(Y, key, m));
        }
      }
    }
  }
}

TEST_CASE("single line oracle, n = 3") {
  std::mt19937_64 rng(19);
  const LineForest line = parse_forest("1>2>3");
  const ClassicalOp Y = restrict_to_forest(random_classical(module_ab(), 3, 1, rng), line);
  const ChiralOp X = inverse_map(Y);
  const auto functions = spanning_functions(3);
  const auto keys = spanning_keys(*module_ab(), 3);
  for (std::size_t k = 0; k < keys.size(); k += 5) {
    for (const DiagRat& f : functions) CHECK(X(keys[k], f) == single_line_formula(Y, keys[k], f));
  }
}

TEST_CASE("pruning does not change values") {
  std::mt19937_64 rng(23);
  const ClassicalOp Y = random_classical(module_ab(), 3, 0, rng);
  const ChiralOp a = inverse_map(Y), b = inverse_map(Y, InverseOptions{false});
  const auto keys = spanning_keys(*module_ab(), 3, 0);
  for (const DiagRat& f : spanning_functions(3)) CHECK(a(keys[1], f) == b(keys[1], f));
}

TEST_CASE("zero operation maps to zero") {
  const ChiralOp zero(module_ab(), 3, [](const TensorKey&, const DiagRat&) { return VPoly(); });
  const ForwardResult back = forward_map(zero, 1);
  CHECK(back.ok());
  for (const auto& [forest, table] : back.op.tables()) {
    for (const auto& [key, value] : table) CHECK(value.is_zero());
  }
  const ClassicalOp empty(module_ab(), 3, 1);
  CHECK(compare_classical(empty, back.op).ok());
}

TEST_CASE("a corrupted evaluator fails sesquilinearity") {
  std::mt19937_64 rng(29);
  const ChiralOp X = inverse_map(random_classical(module_ab(), 2, 1, rng));
  // adds a stray generator whenever f has a double pole
  const ChiralOp bad(module_ab(), 2, [X](const TensorKey& k, const DiagRat& f) {
    VPoly v = X(k, f).rep();
    const auto pole = f.poles().find(Diagonal{zvar(1), zvar(2)});
    if (pole != f.poles().end() && pole->second >= 2) v += VPoly::generator(0);
    return v;
  });
  const CheckReport report = check_sesquilinearity(bad, spanning_keys(*module_ab(), 2), spanning_functions(2));
  CHECK_FALSE(report.ok());
  REQUIRE(report.first_failure.has_value());
  CHECK_FALSE(report.first_failure->input.empty());
}

TEST_CASE("a corrupted evaluator fails the round trip") {
  std::mt19937_64 rng(31);
  const ClassicalOp Y = random_classical(module_ab(), 2, 0, rng);
  const ChiralOp X = inverse_map(Y);
  const ChiralOp bad(module_ab(), 2, [X](const TensorKey& k, const DiagRat& f) { return X(k, f).rep().scaled(2); });
  const ForwardResult back = forward_map(bad, 0);
  bool nonzero = false;
  for (const auto& [forest, table] : Y.tables()) {
    for (const auto& [key, value] : table) nonzero = nonzero || !value.is_zero();
  }
  REQUIRE(nonzero);
  CHECK_FALSE(compare_classical(Y, back.op).ok());
}

TEST_CASE("inverse map rejects invalid tables") {
  ClassicalOp Y(module_ab(), 2, 0);
  // one edge, inputs of degree 0, r = 0: the value must sit in degree 1
  Y.set(parse_forest("1>2"), parse_tensor_key("a, a", *module_ab()), parse_vpoly("L1*a", *module_ab()));
  CHECK_FALSE(validate_classical(Y).ok());
  CHECK_THROWS_AS(inverse_map(Y), DomainError);
}

TEST_CASE("classical text format round trip") {
  std::mt19937_64 rng(37);
  const ClassicalOp Y = random_classical(module_ab(), 3, 2, rng);
  const ClassicalOp back = parse_classical(to_string(Y), module_ab());
  CHECK(back.degree() == 2);
  CHECK(compare_classical(Y, back).ok());
  CHECK(to_string(back) == to_string(Y));
}
