#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chiral/classical.hpp"
#include "chiral/diag_rat.hpp"
#include "chiral/module.hpp"

namespace chiral {

/// A chiral operation, evaluated lazily: (basis tensor, f in O*T_n) ->
/// V[λ1..λn]/<∂ + Σλ>. The kernel may return any representative; results
/// are canonicalized and memoized.
class ChiralOp {
 public:
  using Kernel = std::function<VPoly(const TensorKey&, const DiagRat&)>;

  ChiralOp(std::shared_ptr<const FreeDModule> module, std::uint32_t n, Kernel kernel);

  std::uint32_t n() const { return n_; }
  const FreeDModule& module() const { return *module_; }
  const std::shared_ptr<const FreeDModule>& module_ptr() const { return module_; }

  QuotElem operator()(const TensorKey& key, const DiagRat& f) const;
  QuotElem operator()(const TensorElem& v, const DiagRat& f) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<TensorKey, std::string>, QuotElem> values;
  };

  std::shared_ptr<const FreeDModule> module_;
  std::uint32_t n_;
  Kernel kernel_;
  std::shared_ptr<Cache> cache_;
};

struct InverseOptions {
  /// Skip forests with more edges than f has pole divisors; they contribute 0.
  bool prune = true;
};

/// X(v⊗f) = Σ_Γ Σ_{a,b} λ^(a) F^Γ_{a+b} ∗ Y^Γ(∂^(b) v), then Λ_ℓ = Σ_{i∈L_ℓ} λ_i.
/// Throws DomainError if Y does not validate.
ChiralOp inverse_map(const ClassicalOp& Y, InverseOptions options = {});

struct ForwardResult {
  ClassicalOp op;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Y^Γ(v) = degree s+t-r part of X(v ⊗ p_Γ), rewritten in Λ_ℓ. Values are
/// read on tensors with total ∂-power <= max_dpow; those carrying ∂ on a last
/// vertex are checked against the line relation instead of stored.
ForwardResult forward_map(const ChiralOp& X, int r, std::uint32_t max_dpow = 1);

struct CheckFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct CheckReport {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<CheckFailure> first_failure;

  bool ok() const { return failed == 0; }
  void record(bool pass, const std::function<CheckFailure()>& describe);
  void merge(const CheckReport& other);
};

/// Classes of Y and Y2 agree on every line forest and every basis tensor with
/// total ∂-power <= max_dpow.
CheckReport compare_classical(const ClassicalOp& Y, const ClassicalOp& Y2, std::uint32_t max_dpow = 1);

/// Both sesquilinearity identities on keys × functions:
///   X(v ⊗ ∂_{z_i} f) = X(∂_i v ⊗ f) + λ_i X(v ⊗ f)
///   X(v ⊗ z_ij f) = (∂_{λ_j} - ∂_{λ_i}) X(v ⊗ f)
CheckReport check_sesquilinearity(const ChiralOp& X, const std::vector<TensorKey>& keys,
                                  const std::vector<DiagRat>& functions);

/// inverse_map(Y) against inverse_map of Y with every stored value shifted by
/// (∂ + ΣΛ)·Q for random Q of Λ-degree <= max_degree.
CheckReport check_well_definedness(const ClassicalOp& Y, std::mt19937_64& rng, const std::vector<TensorKey>& keys,
                                   const std::vector<DiagRat>& functions, std::uint32_t max_degree = 2);

struct FiltrationEntry {
  std::size_t level = 0;  // s: number of pole divisors of f
  std::string input;
  long bound = 0;     // s + t - r
  long observed = -1;  // largest generator degree in the output, -1 if zero
};

struct FiltrationWitness {
  std::vector<FiltrationEntry> entries;
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

FiltrationWitness check_filtration(const ChiralOp& X, int r, const std::vector<TensorKey>& keys,
                                   const std::vector<DiagRat>& functions);

/// {q·p_Γ : Γ ∈ L(n), q a monomial in z_1j of degree <= 2} ∪ {z_ij^m : |m| <= 3},
/// without repetitions.
std::vector<DiagRat> spanning_functions(std::uint32_t n);
std::vector<TensorKey> spanning_keys(const FreeDModule& m, std::uint32_t n, std::uint32_t max_dpow = 1);

/// Direct iterated residue for Y carried by the single line 1→...→n:
/// Res f(z1..z_{n-1},0) Y^L(exp(-Σ z_i(λ_i + ∂_i)) v). Only that line's
/// table is read.
QuotElem single_line_formula(const ClassicalOp& Y, const TensorKey& key, const DiagRat& f);

/// n = 2, f = z12^m:
/// (-1)^m ∂_λ^m Y^{••}_λ(v1⊗v2) + (-1)^{m+1} Y^{1→2}((λ+∂)^(-m-1) v1 ⊗ v2),
/// with ∂_λ^m for m < 0 read as the m-fold divided-power antiderivative.
QuotElem n2_closed_form(const ClassicalOp& Y, const TensorKey& key, long m);

/// Keeps only the tables of the given forest.
ClassicalOp restrict_to_forest(const ClassicalOp& Y, const LineForest& forest);

}  // namespace chiral
