#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

/// Variable families. Z are positions, W are per-line positions after a
/// Γ-residue, Lambda/BigLambda are the spectral variables λᵢ and Λℓ, X stands
/// for a pending ∂ᵢ on tensor factor i, and D is ∂ acting on a generator of V.
enum class VarKind : std::uint8_t { Z, Lambda, W, BigLambda, X, D };

struct VarId {
  VarKind kind = VarKind::Z;
  std::uint32_t index = 0;

  auto operator<=>(const VarId&) const = default;
};

inline VarId zvar(std::uint32_t i) { return {VarKind::Z, i}; }
inline VarId wvar(std::uint32_t i) { return {VarKind::W, i}; }
inline VarId lamvar(std::uint32_t i) { return {VarKind::Lambda, i}; }
inline VarId biglamvar(std::uint32_t i) { return {VarKind::BigLambda, i}; }
inline VarId xvar(std::uint32_t i) { return {VarKind::X, i}; }
inline VarId dvar() { return {VarKind::D, 0}; }

std::string to_string(VarId v);

/// Power product with exponents stored sparsely, sorted by variable.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t exponent = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;

  Monomial with_exponent(VarId v, std::uint32_t exponent) const;
  Monomial operator*(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

std::string to_string(const Monomial& m);

/// Sparse multivariate polynomial with exact rational coefficients.
/// No zero coefficient is ever stored, so structural equality is equality.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  MPoly() = default;
  MPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly variable(VarId v);
  static MPoly monomial(const Monomial& m, const Scalar& c = 1);
  /// a - b for two variables, the linear form of a diagonal.
  static MPoly difference(VarId a, VarId b);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Scalar& c);

  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const Scalar& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Scalar& c) { return a *= c; }
  friend MPoly operator*(const Scalar& c, MPoly a) { return a *= c; }
  MPoly operator-() const;
  MPoly mul_monomial(const Monomial& m, const Scalar& c = 1) const;
  MPoly pow(unsigned e) const;

  bool operator==(const MPoly&) const = default;

  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;
  std::set<VarId> variables() const;
  bool involves(VarId v) const;

  MPoly diff(VarId v) const;
  MPoly substitute(VarId v, const MPoly& value) const;
  MPoly rename(VarId from, VarId to) const;
  /// View as a univariate polynomial in v: exponent -> coefficient.
  std::map<std::uint32_t, MPoly> coefficients_in(VarId v) const;

  /// Exact quotient by (a - b), or nullopt when (a - b) does not divide.
  std::optional<MPoly> divide_by_difference(VarId a, VarId b) const;

 private:
  TermMap terms_;
};

/// Deterministic text form: descending total degree, then descending
/// monomial order. Parseable by the expression grammar.
std::string to_string(const MPoly& p);

}  // namespace chiral
