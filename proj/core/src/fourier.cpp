#include "chiral/fourier.hpp"

#include <algorithm>

#include "chiral/errors.hpp"
#include "chiral/residue.hpp"

namespace chiral {

DiagRat PolyOverDiagRat::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? DiagRat(coeff_vars_, MPoly()) : it->second;
}

void PolyOverDiagRat::add_term(const Monomial& m, const DiagRat& c) {
  if (c.vars() != coeff_vars_) throw ArityMismatch("coefficient lives on a different variable set");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyOverDiagRat& PolyOverDiagRat::operator+=(const PolyOverDiagRat& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

PolyOverDiagRat PolyOverDiagRat::scaled(const Scalar& c) const {
  PolyOverDiagRat r(coeff_vars_);
  for (const auto& [m, f] : terms_) r.add_term(m, f.scaled(c));
  return r;
}

PolyOverDiagRat PolyOverDiagRat::mul_lambda(const MPoly& p) const {
  PolyOverDiagRat r(coeff_vars_);
  for (const auto& [m, f] : terms_) {
    for (const auto& [pm, pc] : p.terms()) r.add_term(m * pm, f.scaled(pc));
  }
  return r;
}

PolyOverDiagRat PolyOverDiagRat::diff_lambda(VarId v) const {
  PolyOverDiagRat r(coeff_vars_);
  for (const auto& [m, f] : terms_) {
    const std::uint32_t e = m.degree(v);
    if (e == 0) continue;
    r.add_term(m.with_exponent(v, e - 1), f.scaled(e));
  }
  return r;
}

PolyOverDiagRat PolyOverDiagRat::diff_coeff(VarId v) const {
  PolyOverDiagRat r(coeff_vars_);
  for (const auto& [m, f] : terms_) r.add_term(m, f.diff(v));
  return r;
}

PolyOverDiagRat PolyOverDiagRat::mul_coeff(const DiagRat& c) const {
  PolyOverDiagRat r(coeff_vars_);
  for (const auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

std::string to_string(const PolyOverDiagRat& p) {
  if (p.is_zero()) return "0";
  std::string s;
  // Highest λ-degree first, matching MPoly serialization.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(it->second) + ")";
    if (!it->first.is_one()) s += "*" + to_string(it->first);
  }
  return s;
}

namespace {

// One residue step Res_{z_j} dz_i applied to c·exp(-mu·z_ij), for every
// coefficient c of g.
PolyOverDiagRat residue_step(const PolyOverDiagRat& g, VarId i, VarId j, const MPoly& mu,
                             const std::vector<VarId>& out_vars) {
  PolyOverDiagRat out(out_vars);
  for (const auto& [mono, c] : g.terms()) {
    const int order = c.pole_order(i, j);
    if (order <= 0) continue;
    // Res(z_ij^m c) = (1/(l-m)!) d^{l-m} (z_ij^{l+1} c) at z_i = z_j.
    const auto l = static_cast<unsigned>(order - 1);
    std::vector<DiagRat> derivs{c * DiagRat::diagonal_power(c.vars(), i, j, order)};
    for (unsigned k = 0; k < l; ++k) derivs.push_back(derivs.back().diff(i));
    MPoly minus_mu_pow(1);
    for (unsigned m = 0; m <= l; ++m) {
      const Scalar coeff = Scalar(1) / (Scalar(factorial(m)) * Scalar(factorial(l - m)));
      DiagRat res = derivs[l - m].substitute_equal(i, j).scaled(coeff);
      for (const auto& [pm, pc] : minus_mu_pow.terms()) out.add_term(mono * pm, res.scaled(pc));
      minus_mu_pow = minus_mu_pow * (-mu);
    }
    // The next exponential term meets a function regular on the diagonal.
    DiagRat next = c * DiagRat::diagonal_power(c.vars(), i, j, static_cast<int>(l + 1));
    if (!residue(next, i, j).is_zero()) {
      throw InternalError("exponential truncation is not stable at order " + std::to_string(l + 1));
    }
  }
  return out;
}

}  // namespace

PolyOverDiagRat fourier(const DiagRat& f, const LineForest& forest) {
  if (f.vars() != DiagRat::zvars(forest.n())) {
    throw ArityMismatch("function does not live on z1..z" + std::to_string(forest.n()));
  }
  std::vector<VarId> vars = f.vars();
  PolyOverDiagRat g(vars);
  g.add_term(Monomial(), f);
  const auto& lines = forest.lines();
  for (std::size_t l = lines.size(); l-- > 0;) {
    const auto& line = lines[l];
    MPoly mu;
    for (std::size_t a = 0; a + 1 < line.size(); ++a) {
      mu += MPoly::variable(lamvar(line[a]));
      const VarId zi = zvar(line[a]);
      std::vector<VarId> next_vars;
      for (VarId v : vars) {
        if (v != zi) next_vars.push_back(v);
      }
      g = residue_step(g, zi, zvar(line[a + 1]), mu, next_vars);
      vars = std::move(next_vars);
    }
  }
  std::vector<VarId> wv = vars;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    std::replace(wv.begin(), wv.end(), zvar(lines[l].back()), wvar(static_cast<std::uint32_t>(l + 1)));
  }
  std::sort(wv.begin(), wv.end());
  PolyOverDiagRat out(wv);
  for (const auto& [mono, c] : g.terms()) {
    DiagRat r = c;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      r = r.rename(zvar(lines[l].back()), wvar(static_cast<std::uint32_t>(l + 1)));
    }
    out.add_term(mono, r);
  }
  return out;
}

}  // namespace chiral
