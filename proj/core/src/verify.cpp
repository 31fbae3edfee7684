#include "chiral/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chiral/convolution.hpp"
#include "chiral/errors.hpp"
#include "chiral/fourier.hpp"
#include "chiral/lie.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"
#include "chiral/residue.hpp"

namespace chiral {

std::size_t thread_count() {
  if (const char* env = std::getenv("CHIRAL_THREADS")) {
    try {
      const long k = std::stol(env);
      if (k >= 1) return static_cast<std::size_t>(k);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

using Rng = std::mt19937_64;

Rng case_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (std::uint64_t t : tags) words.push_back(static_cast<std::uint32_t>(t));
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(items.size()) - 1))];
}

// One fraction: c * ∏ (a - b)^k over `pairs` random diagonals, times a
// random monomial unless translation invariance is wanted.
DiagRat random_term(Rng& rng, const std::vector<VarId>& vars, std::size_t pairs, bool translation_invariant) {
  long c = 0;
  while (c == 0) c = uniform(rng, -3, 3);
  DiagRat f = DiagRat::constant(vars, c);
  if (vars.size() < 2) return f;
  for (std::size_t k = 0; k < pairs; ++k) {
    long a = uniform(rng, 0, static_cast<long>(vars.size()) - 1);
    long b = uniform(rng, 0, static_cast<long>(vars.size()) - 2);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    int e = 0;
    while (e == 0) e = static_cast<int>(uniform(rng, -2, 2));
    f = f * DiagRat::diagonal_power(vars, vars[a], vars[b], e);
  }
  if (!translation_invariant) {
    MPoly mono(1);
    const long degree = uniform(rng, 0, 2);
    for (long k = 0; k < degree; ++k) mono = mono * MPoly::variable(pick(rng, vars));
    f = f.mul_poly(mono);
  }
  return f;
}

DiagRat random_function(Rng& rng, const std::vector<VarId>& vars, bool translation_invariant) {
  DiagRat f = random_term(rng, vars, static_cast<std::size_t>(uniform(rng, 1, 3)), translation_invariant);
  if (uniform(rng, 0, 1) == 1) f += random_term(rng, vars, static_cast<std::size_t>(uniform(rng, 1, 3)), translation_invariant);
  return f;
}

MPoly random_lambda_poly(Rng& rng, std::uint32_t p) {
  MPoly q;
  const long terms = uniform(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> factors;
    for (std::uint32_t l = 1; l <= p; ++l) {
      const long b = uniform(rng, 0, 3);
      if (b > 0) factors.emplace_back(biglamvar(l), static_cast<std::uint32_t>(b));
    }
    long c = 0;
    while (c == 0) c = uniform(rng, -3, 3);
    q.add_term(Monomial::from_factors(std::move(factors)), c);
  }
  return q;
}

std::string str(const DiagRat& f) { return to_string(f); }
std::string str(const MPoly& p) { return to_string(p); }
std::string str(const PolyOverDiagRat& p) { return to_string(p); }

template <typename T>
void expect_equal(CheckReport& report, const std::string& input, const T& expected, const T& got) {
  report.record(expected == got, [&] { return CheckFailure{input, str(expected), str(got)}; });
}

void expect_true(CheckReport& report, bool pass, const std::string& input, const std::string& expected,
                 const std::string& got) {
  report.record(pass, [&] { return CheckFailure{input, expected, got}; });
}

// Runs `count` independent units in parallel and merges their reports in order.
// An exception inside a unit becomes a failed case.
CheckReport run_cases(std::size_t count, const std::function<void(std::size_t, CheckReport&)>& unit) {
  std::vector<CheckReport> reports(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      unit(i, reports[i]);
    } catch (const std::exception& e) {
      reports[i].record(false, [&] { return CheckFailure{"case " + std::to_string(i), "no error", e.what()}; });
    }
  });
  CheckReport total;
  for (const auto& r : reports) total.merge(r);
  return total;
}

std::uint64_t fact(std::uint32_t k) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 2; i <= k; ++i) out *= i;
  return out;
}

// ---------------------------------------------------------------- line-basis

CheckReport suite_line_basis(std::uint32_t n) {
  CheckReport report;
  for (std::uint32_t k = 1; k <= n; ++k) {
    const std::string at = "n = " + std::to_string(k);
    const std::size_t dim = relation_quotient_dimension(k, 1);
    expect_true(report, dim == fact(k), at + ": dim of graphs modulo cycle relations", std::to_string(fact(k)),
                std::to_string(dim));
    const std::size_t forests = enumerate_line_forests(k).size();
    expect_true(report, forests == fact(k), at + ": number of line forests", std::to_string(fact(k)),
                std::to_string(forests));
    std::vector<DiGraph> acyclic;
    for (const DiGraph& g : enumerate_graphs(k, 1)) {
      if (!has_cycle(g)) acyclic.push_back(g);
    }
    report.merge(run_cases(acyclic.size(), [&](std::size_t i, CheckReport& r) {
      const LineCombo by_residues = decompose_to_lines(acyclic[i]);
      const LineCombo by_rewriting = rewrite_to_lines(acyclic[i]);
      r.record(by_residues == by_rewriting, [&] {
        return CheckFailure{to_string(acyclic[i]), to_string(by_rewriting), to_string(by_residues)};
      });
    }));
  }
  return report;
}

// ------------------------------------------------------------- fourier-delta

CheckReport suite_fourier_delta(std::uint32_t n) {
  CheckReport report;
  for (std::uint32_t k = 1; k <= n; ++k) {
    const auto forests = enumerate_line_forests(k);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < forests.size(); ++a) {
      for (std::size_t b = 0; b < forests.size(); ++b) {
        if (forests[a].edge_count() == forests[b].edge_count()) pairs.emplace_back(a, b);
      }
    }
    report.merge(run_cases(pairs.size(), [&](std::size_t i, CheckReport& r) {
      const LineForest& gamma = forests[pairs[i].first];
      const LineForest& other = forests[pairs[i].second];
      const PolyOverDiagRat got = fourier(p_gamma(other.graph()), gamma);
      PolyOverDiagRat expected(DiagRat::wvars(gamma.line_count()));
      if (gamma == other) expected.add_term(Monomial(), DiagRat::constant(DiagRat::wvars(gamma.line_count()), 1));
      expect_equal(r, "F^{" + to_string(gamma) + "}(p_{" + to_string(other) + "})", expected, got);
    }));
  }
  return report;
}

// ------------------------------------------------------------ residue-lemmas

constexpr std::size_t kSamples = 200;

DiagRat zero_on(const std::vector<VarId>& vars) { return DiagRat(vars, MPoly()); }

CheckReport suite_residue_lemmas(std::uint32_t n, std::uint64_t seed) {
  const std::uint32_t top = std::max<std::uint32_t>(n, 2);
  std::vector<std::vector<LineForest>> forests(top + 1);
  for (std::uint32_t k = 1; k <= top; ++k) forests[k] = enumerate_line_forests(k);

  enum Lemma : std::uint64_t { Invariance, DivisorDrop, Derivative, LastVariable, CycleSum, FourierInvariance,
                               FourierVanishing, FourierDerivative, FourierMultiplication, LemmaCount };
  return run_cases(kSamples * LemmaCount, [&](std::size_t i, CheckReport& r) {
    const auto lemma = static_cast<Lemma>(i / kSamples);
    Rng rng = case_rng(seed, {1, lemma, i % kSamples});
    const auto k = static_cast<std::uint32_t>(uniform(rng, 2, top));
    const auto vars = DiagRat::zvars(k);
    const LineForest& gamma = pick(rng, forests[k]);
    const std::uint32_t p = gamma.line_count();
    const auto w = DiagRat::wvars(p);
    switch (lemma) {
      case Invariance: {
        const DiagRat f = random_function(rng, vars, true);
        const DiagRat res = gamma_residue(f, gamma);
        expect_true(r, res.is_translation_invariant(), "Res_" + to_string(gamma) + " " + str(f),
                    "translation invariant", str(res));
        break;
      }
      case DivisorDrop: {
        const DiagRat f = random_term(rng, vars, static_cast<std::size_t>(uniform(rng, 1, 4)), false);
        const DiagRat res = gamma_residue(f, gamma);
        const long bound = static_cast<long>(f.divisor_count()) - static_cast<long>(gamma.edge_count());
        const bool pass = res.is_zero() || static_cast<long>(res.divisor_count()) <= bound;
        expect_true(r, pass, "Res_" + to_string(gamma) + " " + str(f),
                    bound < 0 ? "0" : "at most " + std::to_string(bound) + " divisors", str(res));
        break;
      }
      case Derivative: {
        const DiagRat f = random_function(rng, vars, false);
        const auto i_var = static_cast<std::uint32_t>(uniform(rng, 1, k));
        const DiagRat got = gamma_residue(f.diff(zvar(i_var)), gamma);
        DiagRat expected = zero_on(w);
        if (gamma.is_last(i_var)) expected = gamma_residue(f, gamma).diff(wvar(gamma.line_of(i_var) + 1));
        expect_equal(r, "Res_" + to_string(gamma) + " d/dz" + std::to_string(i_var) + " " + str(f), expected, got);
        break;
      }
      case LastVariable: {
        const DiagRat f = random_function(rng, vars, false);
        const auto l = static_cast<std::uint32_t>(uniform(rng, 0, p - 1));
        const std::uint32_t last = gamma.last_vertex(l);
        const DiagRat got = gamma_residue(f.mul_poly(MPoly::variable(zvar(last))), gamma);
        const DiagRat expected = gamma_residue(f, gamma).mul_poly(MPoly::variable(wvar(l + 1)));
        expect_equal(r, "Res_" + to_string(gamma) + " z" + std::to_string(last) + "*" + str(f), expected, got);
        break;
      }
      case CycleSum: {
        // random simple digraph containing an oriented cycle
        std::vector<Edge> edges;
        for (std::uint32_t a = 1; a <= k; ++a) {
          for (std::uint32_t b = 1; b <= k; ++b) {
            if (a != b && uniform(rng, 0, 2) == 0) edges.push_back({a, b});
          }
        }
        const auto cyc = static_cast<std::uint32_t>(uniform(rng, 2, k));
        for (std::uint32_t a = 1; a <= cyc; ++a) {
          const Edge e{a, a == cyc ? 1 : a + 1};
          if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
        const DiGraph g(k, edges);
        const auto cycles = simple_cycles(g);
        const auto& cycle = pick(rng, cycles);
        DiagRat sum = zero_on(vars);
        for (std::size_t a = 0; a < cycle.size(); ++a) {
          sum += p_gamma(g.without_edge({cycle[a], cycle[(a + 1) % cycle.size()]}));
        }
        std::string where = to_string(g) + "; cycle";
        for (std::uint32_t v : cycle) where += " " + std::to_string(v);
        expect_equal(r, where, zero_on(vars), sum);
        break;
      }
      case FourierInvariance: {
        const DiagRat f = random_function(rng, vars, true);
        const PolyOverDiagRat F = fourier(f, gamma);
        bool pass = true;
        for (const auto& [m, c] : F.terms()) pass = pass && c.is_translation_invariant();
        expect_true(r, pass, "F^" + to_string(gamma) + " " + str(f), "translation-invariant coefficients", str(F));
        break;
      }
      case FourierVanishing: {
        std::vector<LineForest> with_edges;
        for (const auto& fo : forests[k]) {
          if (fo.edge_count() > 0) with_edges.push_back(fo);
        }
        const LineForest& h = pick(rng, with_edges);
        const auto pairs = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(h.edge_count()) - 1));
        DiagRat f = random_term(rng, vars, pairs, false);
        // keep only terms with fewer divisors than edges
        if (f.divisor_count() >= h.edge_count()) f = DiagRat::constant(vars, 1);
        const PolyOverDiagRat F = fourier(f, h);
        expect_true(r, F.is_zero(), "F^" + to_string(h) + " " + str(f), "0", str(F));
        break;
      }
      case FourierDerivative: {
        const DiagRat f = random_function(rng, vars, false);
        const auto i_var = static_cast<std::uint32_t>(uniform(rng, 1, k));
        const PolyOverDiagRat got = fourier(f.diff(zvar(i_var)), gamma);
        const PolyOverDiagRat F = fourier(f, gamma);
        PolyOverDiagRat expected(w);
        if (gamma.is_last(i_var)) {
          const std::uint32_t l = gamma.line_of(i_var);
          MPoly lam;
          const auto& line = gamma.lines()[l];
          for (std::size_t a = 0; a + 1 < line.size(); ++a) lam += MPoly::variable(lamvar(line[a]));
          expected = F.diff_coeff(wvar(l + 1));
          expected += F.mul_lambda(-lam);
        } else {
          expected = F.mul_lambda(MPoly::variable(lamvar(i_var)));
        }
        expect_equal(r, "F^" + to_string(gamma) + " d/dz" + std::to_string(i_var) + " " + str(f), expected, got);
        break;
      }
      case FourierMultiplication: {
        const DiagRat f = random_function(rng, vars, false);
        const auto i_var = static_cast<std::uint32_t>(uniform(rng, 1, k));
        const std::uint32_t l = gamma.line_of(i_var);
        const PolyOverDiagRat got = fourier(f.mul_poly(MPoly::variable(zvar(i_var))), gamma);
        const PolyOverDiagRat F = fourier(f, gamma);
        PolyOverDiagRat expected = F.mul_coeff(DiagRat(w, MPoly::variable(wvar(l + 1))));
        expected += F.diff_lambda(lamvar(i_var)).scaled(-1);
        expect_equal(r, "F^" + to_string(gamma) + " z" + std::to_string(i_var) + "*" + str(f), expected, got);
        break;
      }
      case LemmaCount:
        break;
    }
  });
}

// ---------------------------------------------------------------- convolution

MPoly lambda_monomial(const std::vector<long>& b, const Scalar& c = 1) {
  std::vector<Monomial::Factor> factors;
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (b[l] > 0) factors.emplace_back(biglamvar(static_cast<std::uint32_t>(l + 1)), static_cast<std::uint32_t>(b[l]));
  }
  return MPoly::monomial(Monomial::from_factors(std::move(factors)), c);
}

LaurentExpansion monomial_expansion(const std::vector<long>& a, const Scalar& c, const std::vector<long>& caps) {
  LaurentExpansion e;
  e.p = static_cast<std::uint32_t>(a.size());
  e.caps = caps;
  if (!is_zero(c)) e.terms[a] = c;
  return e;
}

// Λ^(m) with Λ^(m) = 0 for m < 0, times a sign.
MPoly divided(const std::vector<long>& m, long sign) {
  Scalar c = sign;
  for (long k : m) {
    if (k < 0) return MPoly();
    c /= Scalar(factorial(static_cast<unsigned long>(k)));
  }
  return lambda_monomial(m, c);
}

CheckReport suite_convolution(std::uint32_t n, std::uint64_t seed) {
  const std::uint32_t pmax = std::clamp<std::uint32_t>(n, 1, 3);
  CheckReport report;

  // notaction identities on monomial pairs F = w^a, Q = Λ^(b)
  report.merge(run_cases(kSamples, [&](std::size_t i, CheckReport& r) {
    Rng rng = case_rng(seed, {2, 0, i});
    const auto p = static_cast<std::uint32_t>(uniform(rng, 1, pmax));
    std::vector<long> a(p), b(p), caps(p);
    for (std::uint32_t l = 0; l < p; ++l) {
      a[l] = uniform(rng, -3, 3);
      b[l] = uniform(rng, 0, 3);
      caps[l] = b[l] + 1;
    }
    const MPoly Q = divided(b, 1);
    const LaurentExpansion F = monomial_expansion(a, 1, caps);
    const MPoly FQ = convolve(F, Q);
    std::ostringstream where;
    where << "F = w^(";
    for (long x : a) where << x << ",";
    where << "), Q = " << str(Q);
    for (std::uint32_t l = 0; l < p; ++l) {
      const VarId L = biglamvar(l + 1);
      std::vector<long> a1 = a;
      ++a1[l];
      const MPoly lhs4 = convolve(monomial_expansion(a1, 1, caps), Q);
      expect_equal(r, where.str() + "; (w" + std::to_string(l + 1) + " F)*Q", -FQ.diff(L), lhs4);
      std::vector<long> a2 = a;
      --a2[l];
      const MPoly lhs5 = MPoly::variable(L) * FQ - convolve(F, MPoly::variable(L) * Q);
      const MPoly rhs5 = convolve(monomial_expansion(a2, a[l], caps), Q);
      expect_equal(r, where.str() + "; L" + std::to_string(l + 1) + " (F*Q) - F*(L Q)", rhs5, lhs5);
    }
  }));

  // the same identities for diagonal functions through the ι expansion
  report.merge(run_cases(kSamples, [&](std::size_t i, CheckReport& r) {
    Rng rng = case_rng(seed, {2, 1, i});
    const auto p = static_cast<std::uint32_t>(uniform(rng, 1, pmax));
    const auto w = DiagRat::wvars(p);
    const DiagRat F = random_function(rng, w, false);
    const MPoly Q = random_lambda_poly(rng, p);
    const MPoly FQ = convolve(F, Q);
    const std::string where = "F = " + str(F) + ", Q = " + str(Q);
    for (std::uint32_t l = 1; l <= p; ++l) {
      const VarId L = biglamvar(l);
      expect_equal(r, where + "; (w" + std::to_string(l) + " F)*Q", -FQ.diff(L),
                   convolve(F.mul_poly(MPoly::variable(wvar(l))), Q));
      expect_equal(r, where + "; L" + std::to_string(l) + " (F*Q) - F*(L Q)", convolve(F.diff(wvar(l)), Q),
                   MPoly::variable(L) * FQ - convolve(F, MPoly::variable(L) * Q));
    }
  }));

  // ι expansion self-consistency: a deeper truncation agrees
  report.merge(run_cases(kSamples / 4, [&](std::size_t i, CheckReport& r) {
    Rng rng = case_rng(seed, {2, 2, i});
    const auto p = static_cast<std::uint32_t>(uniform(rng, 1, pmax));
    const DiagRat F = random_function(rng, DiagRat::wvars(p), false);
    std::vector<long> caps(p);
    for (auto& c : caps) c = uniform(rng, 0, 3);
    bool pass = true;
    std::string error;
    try {
      iota_expand(F, caps, true);
    } catch (const InternalError& e) {
      pass = false;
      error = e.what();
    }
    expect_true(r, pass, "iota " + str(F), "stable expansion", error);
  }));

  // the product of 1/(w1-w2) and (w1-w2) does not act as 1
  {
    const auto w = DiagRat::wvars(2);
    const DiagRat diff = DiagRat::diagonal_power(w, wvar(1), wvar(2), 1);
    const DiagRat inv = DiagRat::diagonal_power(w, wvar(1), wvar(2), -1);
    const MPoly one(1);
    expect_equal(report, "(w1-w2)*1", MPoly(), convolve(diff, one));
    expect_equal(report, "1/(w1-w2)*((w1-w2)*1)", MPoly(), convolve(inv, convolve(diff, one)));
    expect_equal(report, "((w1-w2)/(w1-w2))*1", one, convolve(inv * diff, one));
  }

  // a1 < b1 = 0: F*(∂_Λ1 Q) = 0 although -(w1 F)*Q = ∂_Λ1(F*Q) is not
  for (long a1 = -3; a1 <= -1; ++a1) {
    for (long b2 = 0; b2 <= 2; ++b2) {
      for (long a2 = -2; a2 <= b2; ++a2) {
        const std::vector<long> a{a1, a2}, b{0, b2}, caps{1, b2 + 1};
        const MPoly Q = divided(b, 1);
        const LaurentExpansion F = monomial_expansion(a, 1, caps);
        const std::string where = "F = w1^" + std::to_string(a1) + " w2^" + std::to_string(a2) + ", Q = " + str(Q);
        expect_equal(report, where + "; F*(dQ/dL1)", MPoly(), convolve(F, Q.diff(biglamvar(1))));
        const MPoly expected = divided({b[0] - a1 - 1, b2 - a2}, (a1 + a2) % 2 == 0 ? 1 : -1);
        const MPoly got = convolve(F, Q).diff(biglamvar(1));
        expect_true(report, got == expected && !got.is_zero(), where + "; d/dL1 (F*Q)", str(expected), str(got));
      }
    }
  }
  return report;
}

// ------------------------------------------------------ roundtrip, closed form

std::shared_ptr<const FreeDModule> test_module() {
  static const auto m = std::make_shared<const FreeDModule>(parse_module("a:0\nb:1\n"));
  return m;
}

std::vector<int> degrees(const std::optional<int>& fixed) {
  if (fixed) return {*fixed};
  return {0, 1, 2};
}

constexpr std::size_t kOperations = 20;

std::string show(const FreeDModule& m, const QuotElem& x) { return x.is_zero() ? "0" : to_string(m, x.rep()); }

void roundtrip_case(std::uint32_t k, int r, Rng& rng, CheckReport& report) {
  const auto module = test_module();
  const FreeDModule& m = *module;
  const ClassicalOp Y = random_classical(module, k, r, rng);
  const auto keys = spanning_keys(m, k, 1);
  const auto functions = spanning_functions(k);
  const ChiralOp X = inverse_map(Y);
  const std::string tag = "n = " + std::to_string(k) + ", r = " + std::to_string(r) + ": ";

  CheckReport local = check_sesquilinearity(X, keys, functions);
  local.merge(check_well_definedness(Y, rng, keys, functions, 2));

  const FiltrationWitness witness = check_filtration(X, r, keys, functions);
  for (const FiltrationEntry& e : witness.entries) {
    local.record(e.observed < 0 || e.observed <= e.bound, [&] {
      return CheckFailure{e.input, "output degree <= " + std::to_string(e.bound), std::to_string(e.observed)};
    });
  }

  const ForwardResult back = forward_map(X, r, 1);
  local.record(back.ok(), [&] {
    return CheckFailure{"forward_map", "no violations", back.violations.empty() ? "" : back.violations.front()};
  });
  local.merge(compare_classical(Y, back.op, 1));

  const ChiralOp unpruned = inverse_map(Y, InverseOptions{false});
  for (const DiagRat& f : functions) {
    for (const TensorKey& key : keys) {
      const QuotElem a = X(key, f);
      const QuotElem b = unpruned(key, f);
      local.record(a == b, [&] {
        return CheckFailure{"pruning; v = " + to_string(m, key) + "; f = " + to_string(f), show(m, a), show(m, b)};
      });
    }
  }

  LineForest::Line all;
  for (std::uint32_t i = 1; i <= k; ++i) all.push_back(i);
  const ClassicalOp single = restrict_to_forest(Y, LineForest(k, {all}));
  const ChiralOp Xs = inverse_map(single);
  for (const DiagRat& f : functions) {
    for (const TensorKey& key : keys) {
      const QuotElem expected = single_line_formula(single, key, f);
      const QuotElem got = Xs(key, f);
      local.record(expected == got, [&] {
        return CheckFailure{"single line; v = " + to_string(m, key) + "; f = " + to_string(f), show(m, expected),
                            show(m, got)};
      });
    }
  }
  if (local.first_failure) local.first_failure->input = tag + local.first_failure->input;
  report.merge(local);
}

CheckReport suite_roundtrip(std::uint32_t n, std::uint64_t seed, const std::optional<int>& fixed) {
  struct Job {
    std::uint32_t k;
    int r;
    std::size_t index;
  };
  std::vector<Job> jobs;
  const auto rs = degrees(fixed);
  const std::size_t per_degree = (kOperations + rs.size() - 1) / rs.size();
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (int r : rs) {
      for (std::size_t i = 0; i < per_degree; ++i) jobs.push_back({k, r, i});
    }
  }
  return run_cases(jobs.size(), [&](std::size_t i, CheckReport& report) {
    const Job& job = jobs[i];
    Rng rng = case_rng(seed, {3, job.k, static_cast<std::uint64_t>(job.r), job.index});
    roundtrip_case(job.k, job.r, rng, report);
  });
}

CheckReport suite_n2_closed_form(std::uint64_t seed, const std::optional<int>& fixed) {
  const auto rs = degrees(fixed);
  return run_cases(kOperations, [&](std::size_t i, CheckReport& report) {
    const int r = rs[i % rs.size()];
    Rng rng = case_rng(seed, {4, static_cast<std::uint64_t>(r), i});
    const auto module = test_module();
    const ClassicalOp Y = random_classical(module, 2, r, rng);
    const ChiralOp X = inverse_map(Y);
    const auto vars = DiagRat::zvars(2);
    for (const TensorKey& key : spanning_keys(*module, 2, 1)) {
      for (int m = -3; m <= 3; ++m) {
        const QuotElem expected = n2_closed_form(Y, key, m);
        const QuotElem got = X(key, DiagRat::diagonal_power(vars, zvar(1), zvar(2), m));
        report.record(expected == got, [&] {
          return CheckFailure{"r = " + std::to_string(r) + "; v = " + to_string(*module, key) + "; z12^" +
                                  std::to_string(m),
                              show(*module, expected), show(*module, got)};
        });
      }
    }
  });
}

// -------------------------------------------------------------------- lie-dim

CheckReport suite_lie_dim(std::uint32_t n, std::vector<std::size_t>& dims) {
  CheckReport report;
  dims.assign(n, 0);
  report.merge(run_cases(n, [&](std::size_t i, CheckReport& r) {
    const auto k = static_cast<std::uint32_t>(i + 1);
    dims[i] = classical_dimension(k);
    expect_true(r, dims[i] == fact(k - 1), "classical_dimension(" + std::to_string(k) + ")",
                std::to_string(fact(k - 1)), std::to_string(dims[i]));
    std::size_t connected = 0;
    for (const LineForest& f : enumerate_line_forests(k)) connected += f.connected() ? 1 : 0;
    expect_true(r, connected == fact(k - 1), "connected forests, n = " + std::to_string(k),
                std::to_string(fact(k - 1)), std::to_string(connected));
  }));
  for (std::uint32_t k = 1; k <= std::max<std::uint32_t>(n, 6); ++k) {
    std::set<LineForest> seen;
    for (const BracketWord& w : bracket_words(k)) {
      const LineForest line = bracket_to_line(w);
      seen.insert(line);
      const BracketWord back = line_to_bracket(line);
      expect_true(report, back == w, "bracket " + to_string(w), to_string(w), to_string(back));
    }
    for (const LineForest& f : enumerate_line_forests(k, 1)) {
      expect_true(report, seen.count(f) == 1 && bracket_to_line(line_to_bracket(f)) == f, "line " + to_string(f),
                  to_string(f), to_string(bracket_to_line(line_to_bracket(f))));
    }
  }
  return report;
}

// ------------------------------------------------------------------- reports

std::uint32_t suite_cap(const std::string& name) {
  if (name == "line-basis") return 4;
  if (name == "fourier-delta") return 5;
  if (name == "residue-lemmas") return 4;
  if (name == "convolution") return 3;
  if (name == "roundtrip") return 3;
  if (name == "n2-closed-form") return 2;
  if (name == "lie-dim") return 6;
  return 0;
}

nlohmann::json json_of(const SuiteReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["n"] = r.n;
  j["degree_r"] = r.degree_r ? nlohmann::json(*r.degree_r) : nlohmann::json(nullptr);
  j["cases_total"] = r.cases_total;
  j["cases_failed"] = r.cases_failed;
  if (r.first_counterexample) {
    j["first_counterexample"] = {{"input", r.first_counterexample->input},
                                 {"expected", r.first_counterexample->expected},
                                 {"got", r.first_counterexample->got}};
  } else {
    j["first_counterexample"] = nullptr;
  }
  j["elapsed_ms"] = static_cast<long long>(r.elapsed_ms);
  if (r.suite == "lie-dim") j["dims"] = r.dims;
  if (!r.parts.empty()) {
    j["suites"] = nlohmann::json::array();
    for (const auto& part : r.parts) j["suites"].push_back(json_of(part));
  }
  return j;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"line-basis", "fourier-delta",  "residue-lemmas", "convolution",
                                              "roundtrip",  "n2-closed-form", "lie-dim",        "all"};
  return names;
}

SuiteReport run_suite(const SuiteOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), options.suite) == names.end()) {
    throw DomainError("unknown suite `" + options.suite + "`");
  }
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = options.suite;
  if (options.suite == "all") {
    report.n = options.n;
    for (const std::string& name : names) {
      if (name == "all") continue;
      SuiteOptions sub = options;
      sub.suite = name;
      SuiteReport part = run_suite(sub);
      report.cases_total += part.cases_total;
      report.cases_failed += part.cases_failed;
      if (!report.first_counterexample && part.first_counterexample) {
        report.first_counterexample = part.first_counterexample;
        report.first_counterexample->input = name + ": " + report.first_counterexample->input;
      }
      report.parts.push_back(std::move(part));
    }
  } else {
    const std::uint32_t n = std::min(options.n, suite_cap(options.suite));
    report.n = n;
    CheckReport checks;
    if (options.suite == "line-basis") {
      checks = suite_line_basis(n);
    } else if (options.suite == "fourier-delta") {
      checks = suite_fourier_delta(n);
    } else if (options.suite == "residue-lemmas") {
      checks = suite_residue_lemmas(n, options.seed);
    } else if (options.suite == "convolution") {
      checks = suite_convolution(n, options.seed);
    } else if (options.suite == "roundtrip") {
      report.degree_r = options.degree_r;
      checks = suite_roundtrip(n, options.seed, options.degree_r);
    } else if (options.suite == "n2-closed-form") {
      report.degree_r = options.degree_r;
      checks = suite_n2_closed_form(options.seed, options.degree_r);
    } else {
      checks = suite_lie_dim(n, report.dims);
    }
    report.cases_total = checks.checked;
    report.cases_failed = checks.failed;
    report.first_counterexample = checks.first_failure;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_json(const SuiteReport& report) { return json_of(report).dump(2); }

std::string to_text(const SuiteReport& report) {
  std::ostringstream out;
  auto line = [&](const SuiteReport& r) {
    out << (r.cases_failed == 0 ? "PASS " : "FAIL ") << r.suite << "  n=" << r.n;
    if (r.degree_r) out << "  r=" << *r.degree_r;
    out << "  cases=" << r.cases_total << "  failed=" << r.cases_failed << "  " << static_cast<long long>(r.elapsed_ms)
        << " ms\n";
    if (!r.dims.empty()) {
      out << "  dims:";
      for (std::size_t d : r.dims) out << " " << d;
      out << "\n";
    }
    if (r.first_counterexample) {
      out << "  input:    " << r.first_counterexample->input << "\n"
          << "  expected: " << r.first_counterexample->expected << "\n"
          << "  got:      " << r.first_counterexample->got << "\n";
    }
  };
  for (const auto& part : report.parts) line(part);
  line(report);
  return out.str();
}

}  // namespace chiral
