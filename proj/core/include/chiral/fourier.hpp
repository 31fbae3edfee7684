#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiral/diag_rat.hpp"
#include "chiral/graph.hpp"

namespace chiral {

/// Polynomial in λ variables with coefficients in a fixed DiagRat world
/// (usually w1..wp). Plain exponents; divided powers are applied by callers.
class PolyOverDiagRat {
 public:
  using TermMap = std::map<Monomial, DiagRat>;

  PolyOverDiagRat() = default;
  explicit PolyOverDiagRat(std::vector<VarId> coeff_vars) : coeff_vars_(std::move(coeff_vars)) {}

  const std::vector<VarId>& coeff_vars() const { return coeff_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  DiagRat coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const DiagRat& c);
  PolyOverDiagRat& operator+=(const PolyOverDiagRat& other);
  PolyOverDiagRat scaled(const Scalar& c) const;
  /// Multiplies by a polynomial in the λ variables.
  PolyOverDiagRat mul_lambda(const MPoly& p) const;
  PolyOverDiagRat diff_lambda(VarId v) const;
  /// Applies a derivation of the coefficients termwise.
  PolyOverDiagRat diff_coeff(VarId v) const;
  PolyOverDiagRat mul_coeff(const DiagRat& c) const;

  bool operator==(const PolyOverDiagRat&) const = default;

 private:
  std::vector<VarId> coeff_vars_;
  TermMap terms_;
};

std::string to_string(const PolyOverDiagRat& p);

/// Γ-Fourier transform: Γ-residue of f·∏_lines exp(-Σ_a z_{i_a i_k} λ_{i_a}).
/// The exponential of each line is expanded exactly as far as the pole order
/// at every residue step requires.
PolyOverDiagRat fourier(const DiagRat& f, const LineForest& forest);

}  // namespace chiral
