#include "chiral/diag_rat.hpp"

#include <algorithm>
#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

MPoly diagonal_poly(const Diagonal& d) { return MPoly::difference(d.a, d.b); }

// (x - y) = sign * (key.a - key.b)
std::pair<Diagonal, int> orient(VarId x, VarId y) {
  if (x < y) return {{x, y}, 1};
  return {{y, x}, -1};
}

MPoly diagonal_product(const PoleMap& orders) {
  MPoly r(1);
  for (const auto& [d, k] : orders) r = r * diagonal_poly(d).pow(k);
  return r;
}

// Relabels `from` as `to` in every pole key. Factors whose orientation flips
// contribute (-1)^order to the returned sign.
PoleMap remap_poles(const PoleMap& poles, VarId from, VarId to, int& sign) {
  PoleMap out;
  for (const auto& [d, k] : poles) {
    VarId a = d.a == from ? to : d.a;
    VarId b = d.b == from ? to : d.b;
    if (a == b) throw DomainError("pole on the diagonal being identified");
    auto [key, s] = orient(a, b);
    if (s < 0 && (k % 2 == 1)) sign = -sign;
    out[key] += k;
  }
  return out;
}

}  // namespace

DiagRat::DiagRat(std::vector<VarId> vars, MPoly numerator, PoleMap poles)
    : vars_(std::move(vars)), numerator_(std::move(numerator)), poles_(std::move(poles)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  for (VarId v : numerator_.variables()) {
    if (!is_live(v)) throw DomainError("variable " + to_string(v) + " is not live");
  }
  for (const auto& [d, k] : poles_) {
    if (!(d.a < d.b)) throw DomainError("diagonal must be stored with a < b");
    if (!is_live(d.a) || !is_live(d.b)) throw DomainError("pole on a variable that is not live");
  }
  normalize();
}

std::vector<VarId> DiagRat::zvars(std::uint32_t n) {
  std::vector<VarId> v;
  for (std::uint32_t i = 1; i <= n; ++i) v.push_back(zvar(i));
  return v;
}

std::vector<VarId> DiagRat::wvars(std::uint32_t p) {
  std::vector<VarId> v;
  for (std::uint32_t i = 1; i <= p; ++i) v.push_back(wvar(i));
  return v;
}

DiagRat DiagRat::constant(std::vector<VarId> vars, const Scalar& c) {
  return DiagRat(std::move(vars), MPoly(c));
}

DiagRat DiagRat::diagonal_power(std::vector<VarId> vars, VarId a, VarId b, int exponent) {
  if (a == b) throw DomainError("diagonal needs two distinct variables");
  auto [key, sign] = orient(a, b);
  const unsigned k = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  const Scalar s = (sign < 0 && k % 2 == 1) ? -1 : 1;
  if (exponent >= 0) return DiagRat(std::move(vars), diagonal_poly(key).pow(k) * s);
  return DiagRat(std::move(vars), MPoly(s), PoleMap{{key, k}});
}

bool DiagRat::is_live(VarId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

void DiagRat::normalize() {
  if (numerator_.is_zero()) {
    poles_.clear();
    return;
  }
  for (auto it = poles_.begin(); it != poles_.end();) {
    while (it->second > 0) {
      auto q = numerator_.divide_by_difference(it->first.a, it->first.b);
      if (!q) break;
      numerator_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? poles_.erase(it) : std::next(it);
  }
}

void DiagRat::require_same_vars(const DiagRat& other, const char* op) const {
  if (vars_ != other.vars_) {
    throw ArityMismatch(std::string(op) + ": operands live on different variable sets");
  }
}

DiagRat& DiagRat::operator+=(const DiagRat& other) {
  require_same_vars(other, "add");
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  PoleMap common = poles_;
  for (const auto& [d, k] : other.poles_) common[d] = std::max(common[d], k);
  auto lift = [&](const DiagRat& f) {
    PoleMap missing;
    for (const auto& [d, k] : common) {
      auto it = f.poles_.find(d);
      const std::uint32_t have = it == f.poles_.end() ? 0 : it->second;
      if (k > have) missing[d] = k - have;
    }
    return f.numerator_ * diagonal_product(missing);
  };
  numerator_ = lift(*this) + lift(other);
  poles_ = std::move(common);
  normalize();
  return *this;
}

DiagRat& DiagRat::operator-=(const DiagRat& other) { return *this += -other; }

DiagRat operator*(const DiagRat& a, const DiagRat& b) {
  a.require_same_vars(b, "mul");
  DiagRat r;
  r.vars_ = a.vars_;
  if (a.is_zero() || b.is_zero()) return r;
  r.numerator_ = a.numerator_ * b.numerator_;
  r.poles_ = a.poles_;
  for (const auto& [d, k] : b.poles_) r.poles_[d] += k;
  r.normalize();
  return r;
}

DiagRat DiagRat::scaled(const Scalar& c) const {
  DiagRat r = *this;
  r.numerator_ *= c;
  if (r.numerator_.is_zero()) r.poles_.clear();
  return r;
}

DiagRat DiagRat::mul_poly(const MPoly& p) const {
  return *this * DiagRat(vars_, p);
}

DiagRat DiagRat::diff(VarId v) const {
  if (!is_live(v)) throw DomainError("derivative in variable " + to_string(v) + " that is not live");
  // f = N / ∏ (a-b)^k. Every factor touching v gets one extra power in the
  // common denominator.
  std::vector<std::pair<Diagonal, std::uint32_t>> touching;
  for (const auto& [d, k] : poles_) {
    if (d.a == v || d.b == v) touching.emplace_back(d, k);
  }
  MPoly all_touching(1);
  for (const auto& [d, k] : touching) all_touching = all_touching * diagonal_poly(d);
  MPoly num = numerator_.diff(v) * all_touching;
  for (std::size_t t = 0; t < touching.size(); ++t) {
    const auto& [d, k] = touching[t];
    MPoly others(1);
    for (std::size_t u = 0; u < touching.size(); ++u) {
      if (u != t) others = others * diagonal_poly(touching[u].first);
    }
    const long s = d.a == v ? 1 : -1;
    num -= numerator_ * others * Scalar(s * static_cast<long>(k));
  }
  PoleMap poles = poles_;
  for (const auto& [d, k] : touching) ++poles[d];
  return DiagRat(vars_, std::move(num), std::move(poles));
}

int DiagRat::pole_order(VarId a, VarId b) const {
  if (a == b) throw DomainError("pole_order needs two distinct variables");
  if (is_zero()) throw DomainError("pole order of zero is undefined");
  auto [key, sign] = orient(a, b);
  auto it = poles_.find(key);
  if (it != poles_.end()) return static_cast<int>(it->second);
  int zeros = 0;
  MPoly num = numerator_;
  while (auto q = num.divide_by_difference(key.a, key.b)) {
    num = std::move(*q);
    ++zeros;
  }
  return -zeros;
}

DiagRat DiagRat::substitute_equal(VarId from, VarId to) const {
  if (from == to) throw DomainError("substitute_equal needs two distinct variables");
  if (!is_live(from) || !is_live(to)) throw DomainError("substitute_equal on a variable that is not live");
  if (poles_.count(orient(from, to).first)) {
    throw DomainError("pole on the diagonal " + to_string(from) + " = " + to_string(to));
  }
  int sign = 1;
  PoleMap poles = remap_poles(poles_, from, to, sign);
  std::vector<VarId> vars;
  for (VarId v : vars_) {
    if (v != from) vars.push_back(v);
  }
  return DiagRat(std::move(vars), numerator_.rename(from, to) * Scalar(sign), std::move(poles));
}

DiagRat DiagRat::rename(VarId from, VarId to) const {
  if (from == to) return *this;
  if (!is_live(from)) throw DomainError("rename of a variable that is not live");
  if (is_live(to)) throw DomainError("rename target " + to_string(to) + " is already live");
  int sign = 1;
  PoleMap poles = remap_poles(poles_, from, to, sign);
  std::vector<VarId> vars = vars_;
  std::replace(vars.begin(), vars.end(), from, to);
  return DiagRat(std::move(vars), numerator_.rename(from, to) * Scalar(sign), std::move(poles));
}

bool DiagRat::is_translation_invariant() const {
  DiagRat total = DiagRat(vars_, MPoly());
  for (VarId v : vars_) total += diff(v);
  return total.is_zero();
}

std::string to_string(const DiagRat& f) {
  if (f.is_polynomial()) return to_string(f.numerator());
  std::string den;
  for (const auto& [d, k] : f.poles()) {
    if (!den.empty()) den += '*';
    den += "(" + to_string(d.a) + "-" + to_string(d.b) + ")^-" + std::to_string(k);
  }
  const MPoly& num = f.numerator();
  if (num == MPoly(1)) return den;
  if (num == MPoly(-1)) return "-" + den;
  if (num.size() == 1) return to_string(num) + "*" + den;
  return "(" + to_string(num) + ")*" + den;
}

DiagRat add(const DiagRat& f, const DiagRat& g) { return f + g; }
DiagRat mul(const DiagRat& f, const DiagRat& g) { return f * g; }
DiagRat scale(const DiagRat& f, const Scalar& c) { return f.scaled(c); }

DiagRat diff_z(const DiagRat& f, std::uint32_t i) {
  if (!f.is_live(zvar(i))) throw DomainError("index z" + std::to_string(i) + " out of range");
  return f.diff(zvar(i));
}

int pole_order(const DiagRat& f, std::uint32_t i, std::uint32_t j) {
  return f.pole_order(zvar(i), zvar(j));
}

DiagRat substitute_equal(const DiagRat& f, std::uint32_t i, std::uint32_t j) {
  return f.substitute_equal(zvar(i), zvar(j));
}

bool is_translation_invariant(const DiagRat& f) { return f.is_translation_invariant(); }
std::size_t divisor_count(const DiagRat& f) { return f.divisor_count(); }

}  // namespace chiral
