// Acceptance gate: every criterion is an exact identity, so each line is a
// hard PASS or FAIL. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/iso_maps.hpp"
#include "chiral/lie.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"
#include "chiral/verify.hpp"

using namespace chiral;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome from_suite(const std::string& suite, std::uint32_t n) {
  const SuiteReport r = run_suite({suite, n, kDefaultSeed, std::nullopt});
  Outcome o;
  o.pass = r.cases_failed == 0 && r.cases_total > 0;
  o.detail = std::to_string(r.cases_total) + " cases, " + std::to_string(r.cases_failed) + " failed";
  if (r.first_counterexample) {
    o.detail += "; first: " + r.first_counterexample->input + " expected " + r.first_counterexample->expected +
                " got " + r.first_counterexample->got;
  }
  return o;
}

std::size_t factorial_of(std::uint32_t n) {
  std::size_t f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

Outcome line_basis() {
  Outcome o = from_suite("line-basis", 4);
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const std::size_t dim = relation_quotient_dimension(n, 1);
    const std::size_t lines = enumerate_line_forests(n).size();
    o.detail += "; n=" + std::to_string(n) + " dim=" + std::to_string(dim) + " |L|=" + std::to_string(lines);
    if (dim != factorial_of(n) || lines != factorial_of(n)) o.pass = false;
  }
  return o;
}

Outcome single_line() {
  const auto module = std::make_shared<const FreeDModule>(parse_module("a:0\nb:1\n"));
  const LineForest line = parse_forest("1>2>3");
  const auto keys = spanning_keys(*module, 3);
  const auto functions = spanning_functions(3);
  std::mt19937_64 rng(kDefaultSeed);
  CheckReport report;
  for (int r = 0; r <= 2; ++r) {
    for (int round = 0; round < 2; ++round) {
      const ClassicalOp Y = restrict_to_forest(random_classical(module, 3, r, rng), line);
      const ChiralOp X = inverse_map(Y);
      for (const TensorKey& key : keys) {
        for (const DiagRat& f : functions) {
          const QuotElem got = X(key, f);
          const QuotElem expected = single_line_formula(Y, key, f);
          report.record(got == expected, [&] {
            return CheckFailure{to_string(*module, key) + " ⊗ " + to_string(f), to_string(*module, expected.rep()),
                                to_string(*module, got.rep())};
          });
        }
      }
    }
  }
  Outcome o{report.ok() && report.checked > 0, std::to_string(report.checked) + " comparisons"};
  if (report.first_failure) o.detail += "; first: " + report.first_failure->input;
  return o;
}

Outcome lie_dims() {
  const SuiteReport r = run_suite({"lie-dim", 5, kDefaultSeed, std::nullopt});
  Outcome o;
  o.pass = r.cases_failed == 0 && r.dims == std::vector<std::size_t>{1, 1, 2, 6, 24};
  o.detail = "dims";
  for (std::size_t d : r.dims) o.detail += " " + std::to_string(d);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (const BracketWord& w : bracket_words(n)) {
      if (line_to_bracket(bracket_to_line(w)) != w) o.pass = false;
    }
    if (bracket_words(n).size() != factorial_of(n - 1)) o.pass = false;
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 line basis dim = n! for n = 2..4", line_basis},
      {"2 fourier delta, n <= 5", [] { return from_suite("fourier-delta", 5); }},
      {"3 residue lemmas, n <= 4", [] { return from_suite("residue-lemmas", 4); }},
      {"4 convolution identities and witnesses, p <= 3", [] { return from_suite("convolution", 3); }},
      {"5 inverse and forward map round trip, n = 2, 3", [] { return from_suite("roundtrip", 3); }},
      {"6 n = 2 closed form, m in [-3, 3]", [] { return from_suite("n2-closed-form", 2); }},
      {"7 single-line oracle, n = 3", single_line},
      {"8 Lie dimensions and bracket bijection", lie_dims},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s  (%.1f s)  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
