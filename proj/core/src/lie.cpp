#include "chiral/lie.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "chiral/errors.hpp"
#include "chiral/linalg.hpp"
#include "chiral/mpoly.hpp"

namespace chiral {

namespace {

// Monomials in Λ1..Λk of total degree <= cap.
std::vector<Monomial> monomials(std::uint32_t k, std::uint32_t cap) {
  std::vector<Monomial> out{Monomial()};
  std::vector<Monomial> frontier{Monomial()};
  for (std::uint32_t deg = 1; deg <= cap; ++deg) {
    std::vector<Monomial> next;
    for (const Monomial& m : frontier) {
      // multiply only by variables >= the largest one present, so each monomial appears once
      std::uint32_t from = 1;
      for (const auto& [v, e] : m.factors()) from = std::max(from, v.index);
      for (std::uint32_t l = from; l <= k; ++l) next.push_back(m * Monomial::of(biglamvar(l)));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

std::size_t classical_dimension(std::uint32_t n) {
  if (n == 0) throw DomainError("classical_dimension needs n >= 1");
  constexpr std::uint32_t cap = 2;
  struct Column {
    LineForest forest;
    Monomial mono;
  };
  std::vector<Column> columns;
  std::map<std::tuple<std::size_t, std::uint32_t, Monomial>, SparseVec> equations;

  const auto forests = enumerate_line_forests(n);
  for (std::size_t fi = 0; fi < forests.size(); ++fi) {
    const LineForest& forest = forests[fi];
    const std::uint32_t p = forest.line_count();
    MPoly last;
    for (std::uint32_t l = 1; l < p; ++l) last -= MPoly::variable(biglamvar(l));
    for (const Monomial& mono : monomials(p - 1, cap)) {
      const std::size_t col = columns.size();
      columns.push_back({forest, mono});
      for (std::uint32_t l = 1; l <= p; ++l) {
        // Λ_l · mono with Λ_p = -(Λ1 + ... + Λ_{p-1})
        const MPoly product = MPoly::monomial(mono) * MPoly::variable(biglamvar(l));
        const MPoly reduced = product.substitute(biglamvar(p), last);
        for (const auto& [m, c] : reduced.terms()) {
          equations[{fi, l, m}][col] += c;
        }
      }
    }
  }
  std::vector<SparseVec> rows;
  for (auto& [where, row] : equations) {
    std::erase_if(row, [](const auto& entry) { return is_zero(entry.second); });
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto kernel = nullspace(rows, columns.size());
  for (const SparseVec& v : kernel) {
    for (const auto& [col, c] : v) {
      if (!columns[col].forest.connected()) throw InternalError("solution supported on a disconnected forest");
      if (!columns[col].mono.is_one()) throw InternalError("solution of positive Λ-degree");
    }
  }
  return kernel.size();
}

BracketWord line_to_bracket(const LineForest& forest) {
  if (!forest.connected()) throw DomainError("only a single line corresponds to a bracket word");
  return BracketWord{forest.lines().front()};
}

LineForest bracket_to_line(const BracketWord& w) {
  if (!is_permutation(w.sigma) || w.sigma.empty() || w.sigma.front() != 1) {
    throw DomainError("bracket word needs a permutation with sigma(1) = 1");
  }
  return LineForest(static_cast<std::uint32_t>(w.sigma.size()), {w.sigma});
}

std::vector<BracketWord> bracket_words(std::uint32_t n) {
  std::vector<BracketWord> out;
  if (n == 0) return out;
  Permutation sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1u);
  do {
    out.push_back({sigma});
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
  return out;
}

std::string to_string(const BracketWord& w) {
  if (w.sigma.empty()) return "";
  std::string out = "x" + std::to_string(w.sigma.back());
  for (std::size_t k = w.sigma.size() - 1; k-- > 0;) {
    out = "[x" + std::to_string(w.sigma[k]) + "," + out + "]";
  }
  return out;
}

}  // namespace chiral
