#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "chiral/graph.hpp"
#include "chiral/module.hpp"

namespace chiral {

/// Classical operation of arity n and degree r, given by its values on line
/// forests. Values are representatives in V[Λ1..Λp] (p = number of lines)
/// modulo ∂ + Λ1 + ... + Λp, stored on individual basis tensors.
///
/// A basis tensor that is not stored evaluates through the relation
/// Y((∂_G + Λ_G) v) = 0 of each line G when it carries ∂ on the last vertex
/// of a line, and to 0 otherwise. Tables written on tensors without ∂ on last
/// vertices therefore satisfy that relation by construction.
class ClassicalOp {
 public:
  using Table = std::map<TensorKey, VPoly>;

  ClassicalOp(std::shared_ptr<const FreeDModule> module, std::uint32_t n, int degree);
  ClassicalOp(const ClassicalOp& other);
  ClassicalOp& operator=(const ClassicalOp& other);

  std::uint32_t n() const { return n_; }
  int degree() const { return degree_; }
  const FreeDModule& module() const { return *module_; }
  const std::shared_ptr<const FreeDModule>& module_ptr() const { return module_; }
  const std::vector<LineForest>& forests() const { return forests_; }
  const std::map<LineForest, Table>& tables() const { return tables_; }

  void set(const LineForest& forest, const TensorKey& key, const VPoly& value);

  /// Representative of Y^Γ(key) in V[Λ1..Λp].
  VPoly eval_key(const LineForest& forest, const TensorKey& key) const;
  VPoly eval(const LineForest& forest, const TensorElem& v) const;
  QuotElem eval_class(const LineForest& forest, const TensorElem& v) const;

 private:
  VPoly derive(const LineForest& forest, const TensorKey& key) const;

  std::shared_ptr<const FreeDModule> module_;
  std::uint32_t n_;
  int degree_;
  std::vector<LineForest> forests_;
  std::map<LineForest, Table> tables_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<LineForest, TensorKey>, VPoly> cache_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every stored value: it uses only Λ1..Λp and d, it is homogeneous of
/// degree s + t - r, and for stored tensors with ∂ on the last vertex of a
/// line G the relation Y((∂_G + Λ_G) v) = 0 holds at the tensor v with that
/// ∂ removed.
ValidationReport validate_classical(const ClassicalOp& Y);

/// Y on an arbitrary graph, through its line-forest decomposition, with
/// Λ_ℓ = Σ_{i ∈ L_ℓ} λ_i. Returned in V[λ1..λn]/<∂ + Σλ>.
QuotElem eval_classical(const ClassicalOp& Y, const DiGraph& g, const TensorElem& v);

/// Random operation whose values sit on tensors with total ∂-power <= 1 and
/// no ∂ on last vertices: generators of the right degree with coefficients
/// of degree <= 1 in the Λ's and in d.
ClassicalOp random_classical(std::shared_ptr<const FreeDModule> module, std::uint32_t n, int degree,
                             std::mt19937_64& rng);

/// Adds (∂ + Λ1 + ... + Λp)·Q to every stored value, Q random of Λ-degree <=
/// max_degree. The class of Y is unchanged.
ClassicalOp perturb_representatives(const ClassicalOp& Y, std::mt19937_64& rng, std::uint32_t max_degree);

/// Text format:
///   arity 2
///   degree 0
///   1>2 : a, b -> L1*a + d*b
std::string to_string(const ClassicalOp& Y);
ClassicalOp parse_classical(const std::string& text, std::shared_ptr<const FreeDModule> module);

}  // namespace chiral
