#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chiral/mpoly.hpp"

namespace chiral {

struct Generator {
  std::string name;
  std::uint32_t degree = 0;
  bool odd = false;  // carried along, never used for signs

  bool operator==(const Generator&) const = default;
};

/// Free F[∂]-module on finitely many graded generators. ∂ preserves degree.
class FreeDModule {
 public:
  FreeDModule() = default;
  explicit FreeDModule(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const { return gens_; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(gens_.size()); }
  const Generator& generator(std::uint32_t g) const { return gens_.at(g); }
  std::uint32_t degree(std::uint32_t g) const { return gens_.at(g).degree; }
  std::optional<std::uint32_t> find(const std::string& name) const;

  bool operator==(const FreeDModule&) const = default;

 private:
  std::vector<Generator> gens_;
};

/// One `name:degree[:odd]` per line; blank lines and `#` comments ignored.
FreeDModule parse_module(const std::string& text);
std::string to_string(const FreeDModule& m);

/// ∂^dpow applied to generator `gen`.
struct TensorFactor {
  std::uint32_t gen = 0;
  std::uint32_t dpow = 0;

  auto operator<=>(const TensorFactor&) const = default;
};

using TensorKey = std::vector<TensorFactor>;

std::uint32_t key_degree(const FreeDModule& m, const TensorKey& k);
std::uint32_t key_dpow(const TensorKey& k);
/// All basis tensors of n factors with total ∂-power at most max_dpow.
std::vector<TensorKey> tensor_keys(const FreeDModule& m, std::uint32_t n, std::uint32_t max_dpow);

/// `a, d^2 b` (∂ powers written `d` or `d^k` before the name).
std::string to_string(const FreeDModule& m, const TensorKey& k);

/// Element of V^{⊗n} in the basis of tensor keys.
class TensorElem {
 public:
  explicit TensorElem(std::uint32_t n = 0) : n_(n) {}
  static TensorElem basis(const TensorKey& k, const Scalar& c = 1);

  std::uint32_t n() const { return n_; }
  const std::map<TensorKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const TensorKey& k, const Scalar& c);
  TensorElem& operator+=(const TensorElem& other);
  TensorElem scaled(const Scalar& c) const;
  /// ∂_i^k, i 1-based.
  TensorElem partial(std::uint32_t i, std::uint32_t k = 1) const;

  bool operator==(const TensorElem&) const = default;

 private:
  std::uint32_t n_;
  std::map<TensorKey, Scalar> terms_;
};

/// P(x1..xn) with x_i acting as ∂_i.
TensorElem apply_poly_partials(const MPoly& P, const TensorElem& v);

/// Element of V[spectral variables]: generator index -> polynomial in the
/// spectral variables and d (∂ acting on that generator).
class VPoly {
 public:
  VPoly() = default;
  static VPoly generator(std::uint32_t g, const MPoly& coeff = MPoly(1));

  const std::map<std::uint32_t, MPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  MPoly coefficient(std::uint32_t g) const;

  void add(std::uint32_t g, const MPoly& p);
  VPoly& operator+=(const VPoly& other);
  VPoly& operator-=(const VPoly& other);
  friend VPoly operator+(VPoly a, const VPoly& b) { return a += b; }
  friend VPoly operator-(VPoly a, const VPoly& b) { return a -= b; }
  VPoly operator-() const { return scaled(-1); }
  VPoly scaled(const Scalar& c) const;
  /// Multiplication by a polynomial in spectral variables and d.
  VPoly mul(const MPoly& p) const;
  VPoly substitute(VarId v, const MPoly& value) const;
  VPoly diff(VarId v) const;
  /// Keep only generators of the given degree.
  VPoly project_degree(const FreeDModule& m, std::uint32_t degree) const;
  std::set<VarId> variables() const;

  bool operator==(const VPoly&) const = default;

 private:
  std::map<std::uint32_t, MPoly> terms_;
};

std::string to_string(const FreeDModule& m, const VPoly& v);

/// Which spectral variables the quotient V[y1..yk]/<∂ + y1 + ... + yk> uses.
struct SpectralWorld {
  VarKind kind = VarKind::Lambda;
  std::uint32_t count = 0;

  bool operator==(const SpectralWorld&) const = default;
};

inline SpectralWorld lambda_world(std::uint32_t n) { return {VarKind::Lambda, n}; }
inline SpectralWorld biglambda_world(std::uint32_t p) { return {VarKind::BigLambda, p}; }

/// Normal form: the last variable y_k is replaced by -d - y1 - ... - y_{k-1}.
/// With k = 0 the quotient is V/∂V and every d-term is dropped.
VPoly canonicalize(const VPoly& raw, SpectralWorld world);

/// Class in V[y]/<∂ + Σy>, held in normal form.
class QuotElem {
 public:
  QuotElem() = default;
  QuotElem(SpectralWorld world, const VPoly& raw) : world_(world), rep_(canonicalize(raw, world)) {}

  SpectralWorld world() const { return world_; }
  const VPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  QuotElem& operator+=(const QuotElem& other);
  friend QuotElem operator+(QuotElem a, const QuotElem& b) { return a += b; }
  QuotElem operator-(const QuotElem& other) const;
  QuotElem mul(const MPoly& p) const { return QuotElem(world_, rep_.mul(p)); }

  /// (∂/∂y_j - ∂/∂y_i), well defined on the quotient. On the normal form
  /// ∂/∂y_k vanishes, so the difference is taken directly.
  QuotElem diff_difference(std::uint32_t j, std::uint32_t i) const;

  bool operator==(const QuotElem&) const = default;

 private:
  SpectralWorld world_;
  VPoly rep_;
};

/// Spectral variable y_i of a world.
inline VarId spectral_var(SpectralWorld w, std::uint32_t i) { return {w.kind, i}; }

}  // namespace chiral
