#include "chiral/convolution.hpp"

#include <algorithm>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

struct Pole {
  std::uint32_t a;  // 0-based, a < b
  std::uint32_t b;
  std::uint32_t order;
};

std::vector<Pole> w_poles(const DiagRat& F, std::uint32_t p) {
  if (F.vars() != DiagRat::wvars(p)) {
    throw ArityMismatch("ι expansion needs a function of w1..w" + std::to_string(p));
  }
  std::vector<Pole> poles;
  for (const auto& [d, k] : F.poles()) poles.push_back({d.a.index - 1, d.b.index - 1, k});
  return poles;
}

std::map<std::vector<long>, Scalar> expand(const DiagRat& F, const std::vector<Pole>& poles,
                                           const std::vector<long>& bounds,
                                           const std::vector<long>& caps) {
  const std::size_t p = caps.size();
  std::map<std::vector<long>, Scalar> acc;
  for (const auto& [m, c] : F.numerator().terms()) {
    std::vector<long> e(p, 0);
    for (const auto& [v, k] : m.factors()) e[v.index - 1] = k;
    acc[e] += c;
  }
  // (w_a - w_b)^{-k} = Σ_m binom(k-1+m, m) w_a^{-k-m} w_b^m
  for (const Pole& pole : poles) {
    std::map<std::vector<long>, Scalar> next;
    for (const auto& [e, c] : acc) {
      for (long m = 0; m <= bounds[pole.b]; ++m) {
        std::vector<long> f = e;
        f[pole.a] -= static_cast<long>(pole.order) + m;
        f[pole.b] += m;
        next[f] += c * binomial(static_cast<long>(pole.order) - 1 + m, static_cast<unsigned long>(m));
      }
    }
    acc = std::move(next);
  }
  std::map<std::vector<long>, Scalar> out;
  for (auto& [e, c] : acc) {
    if (is_zero(c)) continue;
    bool inside = true;
    for (std::size_t j = 0; j < p; ++j) inside = inside && e[j] <= caps[j];
    if (inside) out.emplace(e, std::move(c));
  }
  return out;
}

}  // namespace

std::string to_string(const LaurentExpansion& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += to_string(it->second);
    for (std::size_t j = 0; j < it->first.size(); ++j) {
      if (it->first[j] != 0) s += "*w" + std::to_string(j + 1) + "^" + std::to_string(it->first[j]);
    }
  }
  return s;
}

LaurentExpansion iota_expand(const DiagRat& F, const std::vector<long>& caps, bool verify) {
  const auto p = static_cast<std::uint32_t>(caps.size());
  const auto poles = w_poles(F, p);
  // U_j bounds the total power of w_j raised by the expansion, from the
  // requirement that the final exponent of w_j stays <= caps[j].
  std::vector<long> bounds(p, 0);
  for (std::size_t j = p; j-- > 0;) {
    long u = caps[j];
    for (const Pole& pole : poles) {
      if (pole.a == j) u += static_cast<long>(pole.order) + bounds[pole.b];
    }
    bounds[j] = std::max(0L, u);
  }
  LaurentExpansion out{p, caps, expand(F, poles, bounds, caps)};
  if (verify) {
    std::vector<long> wider(p);
    for (std::size_t j = 0; j < p; ++j) wider[j] = 2 * bounds[j] + 1;
    if (expand(F, poles, wider, caps) != out.terms) {
      throw InternalError("ι expansion changed under a wider truncation");
    }
  }
  return out;
}

std::vector<long> lambda_caps(const MPoly& Q, std::uint32_t p) {
  std::vector<long> caps(p, 0);
  for (const auto& [m, c] : Q.terms()) {
    for (const auto& [v, k] : m.factors()) {
      if (v.kind != VarKind::BigLambda) continue;
      if (v.index < 1 || v.index > p) {
        throw ArityMismatch("convolution operand uses L" + std::to_string(v.index) + " beyond p=" + std::to_string(p));
      }
      caps[v.index - 1] = std::max<long>(caps[v.index - 1], k);
    }
  }
  return caps;
}

MPoly convolve(const LaurentExpansion& F, const MPoly& Q) {
  const std::uint32_t p = F.p;
  MPoly out;
  for (const auto& [m, qc] : Q.terms()) {
    std::vector<long> b(p, 0);
    std::vector<Monomial::Factor> passive;
    for (const auto& [v, k] : m.factors()) {
      if (v.kind == VarKind::BigLambda) {
        if (v.index < 1 || v.index > p) throw ArityMismatch("convolution operand uses Λ beyond p");
        b[v.index - 1] = k;
      } else {
        passive.emplace_back(v, k);
      }
    }
    for (std::size_t j = 0; j < p; ++j) {
      if (b[j] > F.caps[j]) throw InternalError("ι expansion truncated below the Λ-degree of the operand");
    }
    for (const auto& [a, c] : F.terms) {
      bool fits = true;
      for (std::size_t j = 0; j < p; ++j) fits = fits && a[j] <= b[j];
      if (!fits) continue;
      Scalar coeff = c * qc;
      long total = 0;
      std::vector<Monomial::Factor> factors = passive;
      for (std::size_t j = 0; j < p; ++j) {
        total += a[j];
        const long nb = b[j] - a[j];
        coeff *= Scalar(factorial(static_cast<unsigned long>(b[j]))) /
                 Scalar(factorial(static_cast<unsigned long>(nb)));
        if (nb > 0) factors.emplace_back(biglamvar(static_cast<std::uint32_t>(j + 1)), static_cast<std::uint32_t>(nb));
      }
      if (total % 2 != 0) coeff = -coeff;
      out.add_term(Monomial::from_factors(std::move(factors)), coeff);
    }
  }
  return out;
}

MPoly convolve(const DiagRat& F, const MPoly& Q) {
  const auto p = static_cast<std::uint32_t>(F.vars().size());
  if (Q.is_zero() || F.is_zero()) return MPoly();
  return convolve(iota_expand(F, lambda_caps(Q, p)), Q);
}

}  // namespace chiral
