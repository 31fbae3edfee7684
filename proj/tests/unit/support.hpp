#pragma once

// Independent oracles used by the unit tests. Nothing here calls the
// residue or Fourier code under test.

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <vector>

#include "chiral/diag_rat.hpp"
#include "chiral/fourier.hpp"
#include "chiral/graph.hpp"

namespace chiral {

// doctest prints operands through these
inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const DiagRat& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const PolyOverDiagRat& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const LineCombo& c) { return os << to_string(c); }

}  // namespace chiral

namespace chiral::testing {

using Point = std::map<VarId, Scalar>;

inline Scalar eval_poly(const MPoly& p, const Point& at) {
  Scalar total = 0;
  for (const auto& [m, c] : p.terms()) {
    Scalar term = c;
    for (const auto& [v, e] : m.factors()) {
      for (std::uint32_t k = 0; k < e; ++k) term *= at.at(v);
    }
    total += term;
  }
  return total;
}

inline Scalar eval_at(const DiagRat& f, const Point& at) {
  Scalar value = eval_poly(f.numerator(), at);
  for (const auto& [d, order] : f.poles()) {
    const Scalar diff = at.at(d.a) - at.at(d.b);
    for (std::uint32_t k = 0; k < order; ++k) value /= diff;
  }
  return value;
}

// Truncated Laurent series in t: coefficient k belongs to t^(shift + k).
struct Series {
  long shift = 0;
  std::vector<Scalar> c;
};

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
  Series out{a.shift + b.shift, std::vector<Scalar>(len, 0)};
  for (std::size_t i = 0; i < a.c.size() && i < len; ++i) {
    for (std::size_t j = 0; j < b.c.size() && i + j < len; ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  return out;
}

// Coefficient of t^-1 in f at z_i = z_j + t, every other variable at `at`.
inline Scalar series_residue(const DiagRat& f, VarId i, VarId j, const Point& at) {
  long total_pole = 0;
  for (const auto& [d, order] : f.poles()) total_pole += order;
  const std::size_t len = static_cast<std::size_t>(total_pole) + 2;
  const VarId t{VarKind::X, 999};

  auto linear_in_t = [&](const MPoly& p) {
    const MPoly shifted = p.substitute(i, MPoly::variable(j) + MPoly::variable(t));
    std::vector<Scalar> coeffs;
    for (const auto& [e, c] : shifted.coefficients_in(t)) {
      if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
      coeffs[e] = eval_poly(c, at);
    }
    return coeffs;
  };

  Series acc{0, linear_in_t(f.numerator())};
  acc.c.resize(std::max(acc.c.size(), len), 0);
  for (const auto& [d, order] : f.poles()) {
    std::vector<Scalar> lin = linear_in_t(MPoly::difference(d.a, d.b));
    lin.resize(2, 0);
    Series inv;
    if (lin[0] == 0) {
      inv = Series{-static_cast<long>(order), {1 / lin[1]}};
      for (std::uint32_t k = 1; k < order; ++k) inv.c[0] /= lin[1];
    } else {
      // (a + b t)^-1 = a^-1 Σ (-b/a)^m t^m
      Series one{0, std::vector<Scalar>(len, 0)};
      Scalar r = 1 / lin[0];
      for (std::size_t m = 0; m < len; ++m) {
        one.c[m] = r;
        r *= -lin[1] / lin[0];
      }
      inv = Series{0, {1}};
      for (std::uint32_t k = 0; k < order; ++k) inv = series_mul(inv, one, len);
    }
    acc = series_mul(acc, inv, len);
  }
  const long idx = -1 - acc.shift;
  if (idx < 0 || idx >= static_cast<long>(acc.c.size())) return 0;
  return acc.c[static_cast<std::size_t>(idx)];
}

inline Point random_point(const std::vector<VarId>& vars, std::mt19937_64& rng) {
  // distinct small integers keep every diagonal nonzero
  std::vector<long> pool;
  for (long k = -40; k <= 40; ++k) pool.push_back(k);
  std::shuffle(pool.begin(), pool.end(), rng);
  Point at;
  for (std::size_t k = 0; k < vars.size(); ++k) at[vars[k]] = Scalar(pool[k]);
  return at;
}

}  // namespace chiral::testing
