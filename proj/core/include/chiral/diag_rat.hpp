#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiral/mpoly.hpp"

namespace chiral {

/// The diagonal a - b, stored with a < b.
struct Diagonal {
  VarId a;
  VarId b;

  auto operator<=>(const Diagonal&) const = default;
};

using PoleMap = std::map<Diagonal, std::uint32_t>;

/// Element of the diagonal localization: numerator / ∏ (a - b)^d over a fixed
/// set of live variables.
///
/// Always normalized: no listed diagonal divides the numerator, no zero
/// orders are stored, and zero has an empty pole map. Structural equality is
/// therefore mathematical equality. Live variables keep their labels through
/// residues, so after eliminating z2 from (z1, z2, z3) the result lives on
/// (z1, z3).
class DiagRat {
 public:
  DiagRat() = default;
  DiagRat(std::vector<VarId> vars, MPoly numerator, PoleMap poles = {});

  static std::vector<VarId> zvars(std::uint32_t n);
  static std::vector<VarId> wvars(std::uint32_t p);
  static DiagRat constant(std::vector<VarId> vars, const Scalar& c);
  /// (a - b)^exponent; negative exponents give poles.
  static DiagRat diagonal_power(std::vector<VarId> vars, VarId a, VarId b, int exponent);

  const std::vector<VarId>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  bool is_live(VarId v) const;
  const MPoly& numerator() const { return numerator_; }
  const PoleMap& poles() const { return poles_; }

  bool is_zero() const { return numerator_.is_zero(); }
  bool is_polynomial() const { return poles_.empty(); }
  bool is_constant() const { return poles_.empty() && numerator_.is_constant(); }

  DiagRat& operator+=(const DiagRat& other);
  DiagRat& operator-=(const DiagRat& other);
  friend DiagRat operator+(DiagRat a, const DiagRat& b) { return a += b; }
  friend DiagRat operator-(DiagRat a, const DiagRat& b) { return a -= b; }
  friend DiagRat operator*(const DiagRat& a, const DiagRat& b);
  friend DiagRat operator*(DiagRat a, const Scalar& c) { return a.scaled(c); }
  friend DiagRat operator*(const Scalar& c, DiagRat a) { return a.scaled(c); }
  DiagRat operator-() const { return scaled(-1); }
  DiagRat scaled(const Scalar& c) const;
  DiagRat mul_poly(const MPoly& p) const;

  bool operator==(const DiagRat&) const = default;

  DiagRat diff(VarId v) const;
  /// Positive: pole order on a = b; negative: zero order; 0: unit.
  int pole_order(VarId a, VarId b) const;
  /// Sets from = to and drops `from` from the live set. Requires no pole on
  /// that diagonal.
  DiagRat substitute_equal(VarId from, VarId to) const;
  /// Relabels a live variable to a label that is not live.
  DiagRat rename(VarId from, VarId to) const;
  bool is_translation_invariant() const;
  /// Number of distinct diagonals in the normalized denominator. An upper
  /// bound for the filtration level.
  std::size_t divisor_count() const { return poles_.size(); }

 private:
  void normalize();
  void require_same_vars(const DiagRat& other, const char* op) const;

  std::vector<VarId> vars_;
  MPoly numerator_;
  PoleMap poles_;
};

/// Canonical text: numerator followed by `(a-b)^-d` factors. Reparses to an
/// equal value through parse_expr + elaborate.
std::string to_string(const DiagRat& f);

// Free-function surface in z-index form.
DiagRat add(const DiagRat& f, const DiagRat& g);
DiagRat mul(const DiagRat& f, const DiagRat& g);
DiagRat scale(const DiagRat& f, const Scalar& c);
DiagRat diff_z(const DiagRat& f, std::uint32_t i);
int pole_order(const DiagRat& f, std::uint32_t i, std::uint32_t j);
DiagRat substitute_equal(const DiagRat& f, std::uint32_t i, std::uint32_t j);
bool is_translation_invariant(const DiagRat& f);
std::size_t divisor_count(const DiagRat& f);

}  // namespace chiral
