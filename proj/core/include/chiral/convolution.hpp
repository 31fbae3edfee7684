#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiral/diag_rat.hpp"
#include "chiral/mpoly.hpp"

namespace chiral {

/// Truncated Laurent expansion in w1..wp. Holds exactly the monomials of ιF
/// whose exponents are all <= caps; lower exponents are unbounded.
struct LaurentExpansion {
  std::uint32_t p = 0;
  std::vector<long> caps;
  std::map<std::vector<long>, Scalar> terms;
};

std::string to_string(const LaurentExpansion& e);

/// ι expansion in the region |w1| > |w2| > ... > |wp|. F must live on
/// w1..wp. With verify set, the expansion is recomputed at a larger
/// truncation and the two are required to agree.
LaurentExpansion iota_expand(const DiagRat& F, const std::vector<long>& caps, bool verify = true);

/// F ∗ Q: every w_ℓ in ιF acts as -∂/∂Λ_ℓ on divided powers, so
/// w^a Λ^(b) = (-1)^{|a|} Λ^(b-a) with Λ^(m) = 0 for m < 0. Variables of Q
/// other than Λ1..Λp are passive coefficients.
MPoly convolve(const LaurentExpansion& F, const MPoly& Q);
MPoly convolve(const DiagRat& F, const MPoly& Q);

/// Degree caps on Λ1..Λp needed to convolve against Q.
std::vector<long> lambda_caps(const MPoly& Q, std::uint32_t p);

}  // namespace chiral
