#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chiral/graph.hpp"

namespace chiral {

/// [x_σ(1), [x_σ(2), [..., x_σ(n)]...]] with σ(1) = 1.
struct BracketWord {
  Permutation sigma;

  auto operator<=>(const BracketWord&) const = default;
};

/// dim P^cl(n) for V = F with ∂ = 0: unknowns are the values on every line
/// forest, polynomials of Λ-degree <= 2 modulo Λ1 + ... + Λp, subject to
/// Λ_ℓ Y^Γ = 0 for every line. Throws InternalError if a solution lives on a
/// disconnected forest or has positive degree.
std::size_t classical_dimension(std::uint32_t n);

BracketWord line_to_bracket(const LineForest& forest);
LineForest bracket_to_line(const BracketWord& w);
/// All words of arity n, in lexicographic order of σ.
std::vector<BracketWord> bracket_words(std::uint32_t n);

/// "[x1,[x3,x2]]"; a single letter for n = 1.
std::string to_string(const BracketWord& w);

}  // namespace chiral
