#include "chiral/iso_maps.hpp"

#include <algorithm>
#include <set>

#include "chiral/convolution.hpp"
#include "chiral/errors.hpp"
#include "chiral/fourier.hpp"
#include "chiral/residue.hpp"

namespace chiral {

namespace {

using Exponents = std::vector<std::uint32_t>;

bool reduced(const LineForest& forest, const TensorKey& key) {
  for (const auto& line : forest.lines()) {
    if (key[line.back() - 1].dpow != 0) return false;
  }
  return true;
}

void require_input(std::uint32_t n, const TensorKey& key, const DiagRat& f) {
  if (key.size() != n) throw ArityMismatch("tensor has " + std::to_string(key.size()) + " factors, expected " +
                                           std::to_string(n));
  if (f.vars() != DiagRat::zvars(n)) throw ArityMismatch("function must live on z1..z" + std::to_string(n));
}

PolyOverDiagRat cached_fourier(const DiagRat& f, const LineForest& forest) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, LineForest>, PolyOverDiagRat> cache;
  auto key = std::make_pair(to_string(f), forest);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  PolyOverDiagRat value = fourier(f, forest);
  std::lock_guard lock(mutex);
  if (cache.size() > 100000) cache.clear();
  cache.emplace(std::move(key), value);
  return value;
}

Exponents lambda_exponents(const Monomial& m, std::uint32_t n) {
  Exponents e(n, 0);
  for (const auto& [v, k] : m.factors()) {
    if (v.kind != VarKind::Lambda || v.index < 1 || v.index > n) throw InternalError("unexpected variable in a transform");
    e[v.index - 1] = k;
  }
  return e;
}

Scalar multi_factorial(const Exponents& e) {
  Scalar out = 1;
  for (std::uint32_t k : e) out *= Scalar(factorial(k));
  return out;
}

MPoly lambda_power(const Exponents& a) {
  std::vector<Monomial::Factor> factors;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0) factors.emplace_back(lamvar(static_cast<std::uint32_t>(i + 1)), a[i]);
  }
  return MPoly::monomial(Monomial::from_factors(std::move(factors)));
}

// Every b with 0 <= b <= e componentwise.
std::vector<Exponents> box(const Exponents& e) {
  std::vector<Exponents> out{Exponents(e.size(), 0)};
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<Exponents> next;
    for (const Exponents& b : out) {
      for (std::uint32_t k = 0; k <= e[i]; ++k) {
        Exponents c = b;
        c[i] = k;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

TensorKey shifted(TensorKey key, const Exponents& b) {
  for (std::size_t i = 0; i < b.size(); ++i) key[i].dpow += b[i];
  return key;
}

VPoly lines_to_lambdas(VPoly value, const LineForest& forest) {
  for (std::uint32_t l = 0; l < forest.line_count(); ++l) {
    MPoly sum;
    for (std::uint32_t i : forest.lines()[l]) sum += MPoly::variable(lamvar(i));
    value = value.substitute(biglamvar(l + 1), sum);
  }
  return value;
}

VPoly inverse_value(const ClassicalOp& Y, const TensorKey& key, const DiagRat& f, bool prune) {
  const std::uint32_t n = Y.n();
  require_input(n, key, f);
  if (!f.is_translation_invariant()) throw DomainError("function is not translation invariant");
  if (n == 0) return Y.eval_key(LineForest(), key).mul(f.numerator());

  VPoly total;
  for (const LineForest& forest : Y.forests()) {
    if (Y.tables().count(forest) == 0) continue;  // the whole Y^Γ vanishes
    if (prune && forest.edge_count() > f.divisor_count()) continue;
    const std::uint32_t p = forest.line_count();
    VPoly part;
    const PolyOverDiagRat transform = cached_fourier(f, forest);
    for (const auto& [mono, coeff] : transform.terms()) {
      const Exponents e = lambda_exponents(mono, n);
      // coefficient of λ^(e) rather than λ^e
      const DiagRat F = coeff * multi_factorial(e);
      std::vector<std::pair<Exponents, VPoly>> values;
      std::vector<long> caps(p, 0);
      for (const Exponents& b : box(e)) {
        VPoly y = Y.eval_key(forest, shifted(key, b));
        if (y.is_zero()) continue;
        y = y.scaled(Scalar(1) / multi_factorial(b));
        for (const auto& [g, q] : y.terms()) {
          const auto c = lambda_caps(q, p);
          for (std::uint32_t l = 0; l < p; ++l) caps[l] = std::max(caps[l], c[l]);
        }
        values.emplace_back(b, std::move(y));
      }
      if (values.empty()) continue;
      const LaurentExpansion expansion = iota_expand(F, caps, false);
      for (const auto& [b, y] : values) {
        Exponents a = e;
        for (std::size_t i = 0; i < n; ++i) a[i] -= b[i];
        const MPoly lam = lambda_power(a) * (Scalar(1) / multi_factorial(a));
        for (const auto& [g, q] : y.terms()) part.add(g, convolve(expansion, q) * lam);
      }
    }
    total += lines_to_lambdas(part, forest);
  }
  return total;
}

std::string describe(const FreeDModule& m, const TensorKey& key, const DiagRat& f) {
  return "v = " + to_string(m, key) + "; f = " + to_string(f);
}

std::string show(const FreeDModule& m, const QuotElem& x) {
  return x.is_zero() ? "0" : to_string(m, x.rep());
}

long sign(long k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

ChiralOp::ChiralOp(std::shared_ptr<const FreeDModule> module, std::uint32_t n, Kernel kernel)
    : module_(std::move(module)), n_(n), kernel_(std::move(kernel)), cache_(std::make_shared<Cache>()) {
  if (!module_) throw DomainError("chiral operation needs a module");
}

QuotElem ChiralOp::operator()(const TensorKey& key, const DiagRat& f) const {
  require_input(n_, key, f);
  auto cache_key = std::make_pair(key, to_string(f));
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->values.find(cache_key);
    if (it != cache_->values.end()) return it->second;
  }
  QuotElem value(lambda_world(n_), kernel_(key, f));
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(std::move(cache_key), value);
  return value;
}

QuotElem ChiralOp::operator()(const TensorElem& v, const DiagRat& f) const {
  QuotElem out(lambda_world(n_), VPoly());
  for (const auto& [key, c] : v.terms()) out += (*this)(key, f).mul(MPoly(c));
  return out;
}

ChiralOp inverse_map(const ClassicalOp& Y, InverseOptions options) {
  const ValidationReport report = validate_classical(Y);
  if (!report.ok()) throw DomainError("classical operation is not valid: " + report.violations.front());
  auto held = std::make_shared<const ClassicalOp>(Y);
  const bool prune = options.prune;
  return ChiralOp(Y.module_ptr(), Y.n(), [held, prune](const TensorKey& key, const DiagRat& f) {
    return inverse_value(*held, key, f, prune);
  });
}

ForwardResult forward_map(const ChiralOp& X, int r, std::uint32_t max_dpow) {
  const std::uint32_t n = X.n();
  const FreeDModule& m = X.module();
  ForwardResult out{ClassicalOp(X.module_ptr(), n, r), {}};
  const auto keys = tensor_keys(m, n, max_dpow);
  for (const LineForest& forest : out.op.forests()) {
    const std::uint32_t p = forest.line_count();
    const long s = static_cast<long>(forest.edge_count());
    const DiagRat f = n == 0 ? DiagRat::constant({}, 1) : p_gamma(forest.graph());
    std::vector<std::pair<TensorKey, VPoly>> deferred;
    for (const TensorKey& key : keys) {
      const std::string where = to_string(forest) + " : " + to_string(m, key);
      const long target = s + static_cast<long>(key_degree(m, key)) - r;
      VPoly kept;
      const QuotElem value = X(key, f);
      for (const auto& [g, q] : value.rep().terms()) {
        const long deg = m.degree(g);
        if (deg > target) {
          out.violations.push_back(where + ": component in degree " + std::to_string(deg) + " above " +
                                   std::to_string(target));
        } else if (deg == target) {
          kept.add(g, q);
        }
      }
      for (std::uint32_t l = 0; l < p; ++l) {
        const auto& line = forest.lines()[l];
        MPoly value = MPoly::variable(biglamvar(l + 1));
        for (std::size_t a = 0; a + 1 < line.size(); ++a) value -= MPoly::variable(lamvar(line[a]));
        kept = kept.substitute(lamvar(line.back()), value);
      }
      const auto vars = kept.variables();
      if (std::any_of(vars.begin(), vars.end(), [](VarId v) { return v.kind == VarKind::Lambda; })) {
        out.violations.push_back(where + ": value is not a polynomial in the line sums");
        continue;
      }
      kept = canonicalize(kept, biglambda_world(p));
      if (reduced(forest, key)) {
        out.op.set(forest, key, kept);
      } else {
        deferred.emplace_back(key, std::move(kept));
      }
    }
    for (const auto& [key, value] : deferred) {
      if (canonicalize(out.op.eval_key(forest, key), biglambda_world(p)) != value) {
        out.violations.push_back(to_string(forest) + " : " + to_string(m, key) + ": line relation fails");
      }
    }
  }
  return out;
}

void CheckReport::record(bool pass, const std::function<CheckFailure()>& describe_failure) {
  ++checked;
  if (pass) return;
  ++failed;
  if (!first_failure) first_failure = describe_failure();
}

void CheckReport::merge(const CheckReport& other) {
  checked += other.checked;
  failed += other.failed;
  if (!first_failure && other.first_failure) first_failure = other.first_failure;
}

CheckReport compare_classical(const ClassicalOp& Y, const ClassicalOp& Y2, std::uint32_t max_dpow) {
  if (Y.n() != Y2.n()) throw ArityMismatch("operations of different arity");
  CheckReport report;
  const FreeDModule& m = Y.module();
  for (const LineForest& forest : Y.forests()) {
    const SpectralWorld world = biglambda_world(forest.line_count());
    for (const TensorKey& key : tensor_keys(m, Y.n(), max_dpow)) {
      const QuotElem a(world, Y.eval_key(forest, key));
      const QuotElem b(world, Y2.eval_key(forest, key));
      report.record(a == b, [&] {
        return CheckFailure{to_string(forest) + " : " + to_string(m, key), show(m, a), show(m, b)};
      });
    }
  }
  return report;
}

CheckReport check_sesquilinearity(const ChiralOp& X, const std::vector<TensorKey>& keys,
                                  const std::vector<DiagRat>& functions) {
  CheckReport report;
  const std::uint32_t n = X.n();
  const FreeDModule& m = X.module();
  for (const DiagRat& f : functions) {
    for (const TensorKey& key : keys) {
      const QuotElem base = X(key, f);
      for (std::uint32_t i = 1; i <= n; ++i) {
        const QuotElem lhs = X(key, f.diff(zvar(i)));
        TensorKey up = key;
        ++up[i - 1].dpow;
        const QuotElem rhs = X(up, f) + base.mul(MPoly::variable(lamvar(i)));
        report.record(lhs == rhs, [&] {
          return CheckFailure{describe(m, key, f) + "; d/dz" + std::to_string(i), show(m, rhs), show(m, lhs)};
        });
      }
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = i + 1; j <= n; ++j) {
          const QuotElem lhs = X(key, f.mul_poly(MPoly::difference(zvar(i), zvar(j))));
          const QuotElem rhs = base.diff_difference(j, i);
          report.record(lhs == rhs, [&] {
            return CheckFailure{describe(m, key, f) + "; times z" + std::to_string(i) + " - z" + std::to_string(j),
                                show(m, rhs), show(m, lhs)};
          });
        }
      }
    }
  }
  return report;
}

CheckReport check_well_definedness(const ClassicalOp& Y, std::mt19937_64& rng, const std::vector<TensorKey>& keys,
                                   const std::vector<DiagRat>& functions, std::uint32_t max_degree) {
  const ClassicalOp Y2 = perturb_representatives(Y, rng, max_degree);
  const ChiralOp X = inverse_map(Y);
  const ChiralOp X2 = inverse_map(Y2);
  const FreeDModule& m = Y.module();
  CheckReport report;
  for (const DiagRat& f : functions) {
    for (const TensorKey& key : keys) {
      const QuotElem a = X(key, f);
      const QuotElem b = X2(key, f);
      report.record(a == b, [&] { return CheckFailure{describe(m, key, f), show(m, a), show(m, b)}; });
    }
  }
  return report;
}

FiltrationWitness check_filtration(const ChiralOp& X, int r, const std::vector<TensorKey>& keys,
                                   const std::vector<DiagRat>& functions) {
  FiltrationWitness witness;
  const FreeDModule& m = X.module();
  for (const DiagRat& f : functions) {
    for (const TensorKey& key : keys) {
      FiltrationEntry entry;
      entry.level = f.divisor_count();
      entry.input = describe(m, key, f);
      entry.bound = static_cast<long>(entry.level) + static_cast<long>(key_degree(m, key)) - r;
      const QuotElem value = X(key, f);
      for (const auto& [g, q] : value.rep().terms()) {
        entry.observed = std::max(entry.observed, static_cast<long>(m.degree(g)));
      }
      if (entry.observed >= 0 && entry.observed > entry.bound) ++witness.violations;
      witness.entries.push_back(std::move(entry));
    }
  }
  return witness;
}

std::vector<DiagRat> spanning_functions(std::uint32_t n) {
  const auto vars = DiagRat::zvars(n);
  std::vector<DiagRat> out;
  std::set<std::string> seen;
  auto push = [&](const DiagRat& f) {
    if (seen.insert(to_string(f)).second) out.push_back(f);
  };
  std::vector<MPoly> diffs;
  for (std::uint32_t j = 2; j <= n; ++j) diffs.push_back(MPoly::difference(zvar(1), zvar(j)));
  std::vector<MPoly> qs{MPoly(1)};
  for (std::size_t a = 0; a < diffs.size(); ++a) {
    qs.push_back(diffs[a]);
    for (std::size_t b = a; b < diffs.size(); ++b) qs.push_back(diffs[a] * diffs[b]);
  }
  for (const LineForest& forest : enumerate_line_forests(n)) {
    const DiagRat pg = n == 0 ? DiagRat::constant({}, 1) : p_gamma(forest.graph());
    for (const MPoly& q : qs) push(pg.mul_poly(q));
  }
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      for (int k = -3; k <= 3; ++k) push(DiagRat::diagonal_power(vars, zvar(i), zvar(j), k));
    }
  }
  return out;
}

std::vector<TensorKey> spanning_keys(const FreeDModule& m, std::uint32_t n, std::uint32_t max_dpow) {
  return tensor_keys(m, n, max_dpow);
}

QuotElem single_line_formula(const ClassicalOp& Y, const TensorKey& key, const DiagRat& f) {
  const std::uint32_t n = Y.n();
  if (n == 0) throw DomainError("the single-line formula needs n >= 1");
  require_input(n, key, f);
  LineForest::Line vertices;
  for (std::uint32_t i = 1; i <= n; ++i) vertices.push_back(i);
  const LineForest line(n, {vertices});
  const auto vars = DiagRat::zvars(n);

  std::uint32_t bound = 0;
  for (const auto& [d, k] : f.poles()) bound += k;

  VPoly total;
  // c ranges over exponents of z_{1n}, ..., z_{n-1,n} with |c| <= bound + 1
  std::vector<Exponents> level{Exponents(n - 1, 0)};
  for (std::uint32_t size = 0; size <= bound + 1; ++size) {
    for (const Exponents& c : level) {
      DiagRat g = f;
      for (std::uint32_t i = 1; i < n; ++i) {
        if (c[i - 1] > 0) g = g * DiagRat::diagonal_power(vars, zvar(i), zvar(n), static_cast<int>(c[i - 1]));
      }
      const DiagRat rho = gamma_residue(g, line);
      if (!rho.is_constant()) throw InternalError("line residue of a translation-invariant function is not constant");
      const Scalar value = rho.numerator().constant_term();
      if (size == bound + 1) {
        if (!is_zero(value)) throw InternalError("residue series does not terminate at the pole bound");
        continue;
      }
      if (is_zero(value)) continue;
      const Scalar coeff = value * Scalar(sign(size)) / multi_factorial(c);
      for (const Exponents& b : box(c)) {
        Exponents full = b;
        full.push_back(0);
        Exponents rest = c;
        Scalar binom = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) {
          rest[i] -= b[i];
          binom *= binomial(c[i], b[i]);
        }
        rest.push_back(0);
        VPoly y = lines_to_lambdas(Y.eval_key(line, shifted(key, full)), line);
        total += y.mul(lambda_power(rest)).scaled(coeff * binom);
      }
    }
    std::set<Exponents> next;
    for (const Exponents& c : level) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        Exponents up = c;
        ++up[i];
        next.insert(up);
      }
    }
    level.assign(next.begin(), next.end());
    if (n == 1) break;
  }
  return QuotElem(lambda_world(n), total);
}

QuotElem n2_closed_form(const ClassicalOp& Y, const TensorKey& key, long m) {
  if (Y.n() != 2 || key.size() != 2) throw ArityMismatch("the closed form is for n = 2");
  const LineForest dots(2, {{1}, {2}});
  const LineForest edge(2, {{1, 2}});
  const VarId L1 = biglamvar(1);

  VPoly out;
  const VPoly flat = canonicalize(Y.eval_key(dots, key), biglambda_world(2));
  for (const auto& [g, q] : flat.terms()) {
    MPoly t;
    if (m >= 0) {
      t = q;
      for (long k = 0; k < m; ++k) t = t.diff(L1);
      t *= Scalar(sign(m));
    } else {
      const long k = -m;
      for (const auto& [mono, c] : q.terms()) {
        const std::uint32_t b = mono.degree(L1);
        const auto up = static_cast<std::uint32_t>(b + k);
        t.add_term(mono.with_exponent(L1, up), c * Scalar(sign(k)) * Scalar(factorial(b)) / Scalar(factorial(up)));
      }
    }
    out.add(g, t.rename(L1, lamvar(1)));
  }
  if (m < 0) {
    const auto k = static_cast<std::uint32_t>(-m - 1);
    for (std::uint32_t b = 0; b <= k; ++b) {
      const VPoly y = lines_to_lambdas(Y.eval_key(edge, shifted(key, {b, 0})), edge);
      const Scalar c = Scalar(sign(m + 1)) / (Scalar(factorial(k - b)) * Scalar(factorial(b)));
      out += y.mul(lambda_power({k - b, 0})).scaled(c);
    }
  }
  return QuotElem(lambda_world(2), out);
}

ClassicalOp restrict_to_forest(const ClassicalOp& Y, const LineForest& forest) {
  ClassicalOp out(Y.module_ptr(), Y.n(), Y.degree());
  auto it = Y.tables().find(forest);
  if (it == Y.tables().end()) return out;
  for (const auto& [key, value] : it->second) out.set(forest, key, value);
  return out;
}

}  // namespace chiral
