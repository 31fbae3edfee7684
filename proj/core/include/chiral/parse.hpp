#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chiral/diag_rat.hpp"
#include "chiral/graph.hpp"
#include "chiral/module.hpp"
#include "chiral/mpoly.hpp"

namespace chiral {

/// Grammar:
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' ['-'] digits)?
///   atom   := digits ['/' digits] | var | name | '(' expr ')'
///   var    := ('z' | 'w' | 'l' | 'L' | 'x') digits | 'd'
/// `name` is any other identifier and is only meaningful as a generator of V.
struct ExprAst {
  enum class Kind { Number, Variable, Name, Sum, Difference, Product, Power, Negate };

  Kind kind = Kind::Number;
  std::size_t position = 0;
  Scalar number;
  VarId var;
  std::string name;
  long exponent = 0;
  std::vector<ExprAst> children;
};

ExprAst parse_expr(const std::string& text);
std::string to_string(const ExprAst& e);

/// Elaborates over z1..zn. Negative powers are accepted only for bases that
/// are a constant times a product of differences z_i - z_j.
DiagRat elaborate(const ExprAst& e, std::uint32_t n);
/// Same, over an explicit live-variable set (e.g. w1..wp).
DiagRat elaborate(const ExprAst& e, const std::vector<VarId>& vars);
MPoly elaborate_poly(const ExprAst& e);
VPoly elaborate_vpoly(const ExprAst& e, const FreeDModule& m);

/// Largest index used with the given variable kind, 0 if none.
std::uint32_t max_index(const ExprAst& e, VarKind kind);

DiagRat parse_diag_rat(const std::string& text, std::uint32_t n);
MPoly parse_poly(const std::string& text);
VPoly parse_vpoly(const std::string& text, const FreeDModule& m);

/// `n=3; edges=1->2,2->3`
DiGraph parse_graph(const std::string& text);
/// `1>2>3 | 4>5`; the arity is the number of listed vertices.
LineForest parse_forest(const std::string& text);
/// `i1>i2>...>ik` as a plain vertex sequence.
std::vector<std::uint32_t> parse_line(const std::string& text);
/// `a, d^2 b`
TensorKey parse_tensor_key(const std::string& text, const FreeDModule& m);

}  // namespace chiral
