#include "chiral/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace chiral {

std::string to_string(VarId v) {
  switch (v.kind) {
    case VarKind::Z:
      return "z" + std::to_string(v.index);
    case VarKind::Lambda:
      return "l" + std::to_string(v.index);
    case VarKind::W:
      return "w" + std::to_string(v.index);
    case VarKind::BigLambda:
      return "L" + std::to_string(v.index);
    case VarKind::X:
      return "x" + std::to_string(v.index);
    case VarKind::D:
      return "d";
  }
  return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(v, exponent);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
  }
  return m;
}

std::uint32_t Monomial::degree(VarId v) const {
  for (const auto& [u, e] : factors_) {
    if (u == v) return e;
    if (v < u) break;
  }
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t exponent) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + 1);
  bool placed = false;
  for (const auto& f : factors_) {
    if (!placed && !(f.first < v)) {
      if (exponent > 0) m.factors_.emplace_back(v, exponent);
      placed = true;
      if (f.first == v) continue;
    }
    m.factors_.push_back(f);
  }
  if (!placed && exponent > 0) m.factors_.emplace_back(v, exponent);
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) {
      m.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    } else if (a->first < b->first) {
      m.factors_.push_back(*a++);
    } else {
      m.factors_.push_back(*b++);
    }
  }
  m.factors_.insert(m.factors_.end(), a, factors_.end());
  m.factors_.insert(m.factors_.end(), b, other.factors_.end());
  return m;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(v);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// ------------------------------------------------------------------- MPoly

MPoly::MPoly(const Scalar& c) {
  if (!chiral::is_zero(c)) terms_.emplace(Monomial(), c);
}

MPoly MPoly::variable(VarId v) { return monomial(Monomial::of(v)); }

MPoly MPoly::monomial(const Monomial& m, const Scalar& c) {
  MPoly p;
  p.add_term(m, c);
  return p;
}

MPoly MPoly::difference(VarId a, VarId b) {
  MPoly p = variable(a);
  p.add_term(Monomial::of(b), -1);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar MPoly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const Scalar& c) {
  if (chiral::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (chiral::is_zero(it->second)) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Scalar& c) {
  if (chiral::is_zero(c)) {
    terms_.clear();
  } else {
    for (auto& [m, coeff] : terms_) coeff *= c;
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Scalar& c) const {
  MPoly r;
  if (chiral::is_zero(c)) return r;
  // distinct monomials stay distinct, so no coefficient merging is needed
  for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm * m, cc * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::uint32_t MPoly::degree(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

std::uint32_t MPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

std::set<VarId> MPoly::variables() const {
  std::set<VarId> vs;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vs.insert(f.first);
  }
  return vs;
}

bool MPoly::involves(VarId v) const {
  for (const auto& [m, c] : terms_) {
    if (m.degree(v) > 0) return true;
  }
  return false;
}

MPoly MPoly::diff(VarId v) const {
  MPoly r;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.degree(v);
    if (e == 0) continue;
    r.add_term(m.with_exponent(v, e - 1), c * Scalar(static_cast<long>(e)));
  }
  return r;
}

std::map<std::uint32_t, MPoly> MPoly::coefficients_in(VarId v) const {
  std::map<std::uint32_t, MPoly> out;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.degree(v);
    out[e].add_term(m.with_exponent(v, 0), c);
  }
  return out;
}

MPoly MPoly::substitute(VarId v, const MPoly& value) const {
  auto by_power = coefficients_in(v);
  MPoly r;
  MPoly power(1);
  std::uint32_t current = 0;
  for (const auto& [e, coeff] : by_power) {
    while (current < e) {
      power = power * value;
      ++current;
    }
    r += coeff * power;
  }
  return r;
}

MPoly MPoly::rename(VarId from, VarId to) const {
  if (from == to) return *this;
  MPoly r;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.degree(from);
    if (e == 0) {
      r.add_term(m, c);
    } else {
      Monomial rest = m.with_exponent(from, 0);
      r.add_term(rest.with_exponent(to, rest.degree(to) + e), c);
    }
  }
  return r;
}

std::optional<MPoly> MPoly::divide_by_difference(VarId a, VarId b) const {
  if (is_zero()) return MPoly();
  auto coeffs = coefficients_in(a);
  const std::uint32_t top = coeffs.rbegin()->first;
  if (top == 0) return std::nullopt;
  // Synthetic division by (a - b), coefficients being polynomials free of a.
  const MPoly bpoly = MPoly::variable(b);
  std::vector<MPoly> q(top);
  MPoly carry;
  for (std::uint32_t k = top; k >= 1; --k) {
    auto it = coeffs.find(k);
    MPoly ck = it == coeffs.end() ? MPoly() : it->second;
    carry = ck + bpoly * carry;
    q[k - 1] = carry;
  }
  auto it0 = coeffs.find(0);
  MPoly remainder = (it0 == coeffs.end() ? MPoly() : it0->second) + bpoly * carry;
  if (!remainder.is_zero()) return std::nullopt;
  MPoly result;
  for (std::uint32_t k = 0; k < top; ++k) {
    for (const auto& [m, c] : q[k].terms()) {
      result.add_term(m.with_exponent(a, k), c);
    }
  }
  return result;
}

std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<const Monomial*, const Scalar*>> order;
  order.reserve(p.size());
  for (const auto& [m, c] : p.terms()) order.emplace_back(&m, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    const auto dx = x.first->total_degree();
    const auto dy = y.first->total_degree();
    if (dx != dy) return dx > dy;
    return *y.first < *x.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : order) {
    Scalar coeff = *c;
    if (first) {
      if (sgn(coeff) < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (sgn(coeff) < 0 ? " - " : " + ");
      if (sgn(coeff) < 0) coeff = -coeff;
    }
    first = false;
    if (m->is_one()) {
      os << coeff.get_str();
    } else if (coeff == 1) {
      os << to_string(*m);
    } else {
      os << coeff.get_str() << "*" << to_string(*m);
    }
  }
  return os.str();
}

}  // namespace chiral
