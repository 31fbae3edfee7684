#include "chiral/residue.hpp"

#include "chiral/errors.hpp"

namespace chiral {

namespace {

std::vector<VarId> without(const std::vector<VarId>& vars, VarId v) {
  std::vector<VarId> out;
  for (VarId u : vars) {
    if (u != v) out.push_back(u);
  }
  return out;
}

void require_forest_arity(const DiagRat& f, const LineForest& forest) {
  if (f.vars() != DiagRat::zvars(forest.n())) {
    throw ArityMismatch("function does not live on z1..z" + std::to_string(forest.n()));
  }
}

}  // namespace

DiagRat residue(const DiagRat& f, VarId i, VarId j) {
  if (i == j) throw DomainError("residue needs two distinct variables");
  if (!f.is_live(i) || !f.is_live(j)) throw DomainError("residue in a variable that is not live");
  if (f.is_zero()) return DiagRat(without(f.vars(), i), MPoly());
  const int order = f.pole_order(i, j);
  if (order <= 0) return DiagRat(without(f.vars(), i), MPoly());
  const auto l = static_cast<unsigned>(order - 1);
  DiagRat g = f * DiagRat::diagonal_power(f.vars(), i, j, order);
  for (unsigned k = 0; k < l; ++k) g = g.diff(i);
  if (l > 1) g = g.scaled(Scalar(1) / Scalar(factorial(l)));
  return g.substitute_equal(i, j);
}

DiagRat residue(const DiagRat& f, std::uint32_t i, std::uint32_t j) {
  return residue(f, zvar(i), zvar(j));
}

DiagRat gamma_residue(const DiagRat& f, const LineForest& forest) {
  require_forest_arity(f, forest);
  DiagRat g = f;
  const auto& lines = forest.lines();
  for (std::size_t l = lines.size(); l-- > 0;) {
    for (std::size_t a = 0; a + 1 < lines[l].size(); ++a) {
      g = residue(g, zvar(lines[l][a]), zvar(lines[l][a + 1]));
    }
  }
  for (std::size_t l = 0; l < lines.size(); ++l) {
    g = g.rename(zvar(lines[l].back()), wvar(static_cast<std::uint32_t>(l + 1)));
  }
  return g;
}

}  // namespace chiral
