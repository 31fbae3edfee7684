#pragma once

#include <cstdint>

#include "chiral/diag_rat.hpp"
#include "chiral/graph.hpp"

namespace chiral {

/// Res_{z_j} dz_i f. With l+1 the pole order along z_i = z_j, this is
/// (1/l!) d^l/dz_i^l (z_ij^{l+1} f) evaluated at z_i = z_j, and zero when
/// l < 0. The result no longer has z_i among its live variables.
DiagRat residue(const DiagRat& f, VarId i, VarId j);
DiagRat residue(const DiagRat& f, std::uint32_t i, std::uint32_t j);

/// Iterated residue along every line of the forest, last line first. Line ℓ
/// collapses onto its last vertex, which is then renamed w_ℓ.
DiagRat gamma_residue(const DiagRat& f, const LineForest& forest);

}  // namespace chiral
