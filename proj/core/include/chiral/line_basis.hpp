#pragma once

#include <cstdint>
#include <vector>

#include "chiral/graph.hpp"
#include "chiral/linalg.hpp"

namespace chiral {

/// Class of g modulo cycle relations in the line-forest basis. The
/// coefficient of Γ′ (same edge count as g) is the Γ′-residue of p_g, which
/// must be a constant.
LineCombo decompose_to_lines(const DiGraph& g);

/// Same class, computed by rewriting with cycle relations: split edges at a
/// vertex of degree >= 2 through a 3-cycle, peel leaves, recurse.
LineCombo rewrite_to_lines(const DiGraph& g);

/// All n-graphs whose ordered-pair multiplicities are at most max_mult, in a
/// fixed order; the coordinates used by cycle_relation_span.
std::vector<DiGraph> enumerate_graphs(std::uint32_t n, std::uint32_t max_mult);

/// Generators of the cycle relations restricted to enumerate_graphs(n,
/// max_mult): every graph containing a cycle, and for each such graph and
/// each simple cycle C in it, Σ_{e∈C} Γ∖e.
std::vector<SparseVec> cycle_relation_span(std::uint32_t n, std::uint32_t max_mult);

/// dim of the span of enumerate_graphs(n, max_mult) modulo the relations.
std::size_t relation_quotient_dimension(std::uint32_t n, std::uint32_t max_mult);

}  // namespace chiral
