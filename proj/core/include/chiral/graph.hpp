#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chiral/diag_rat.hpp"
#include "chiral/scalar.hpp"

namespace chiral {

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;

  auto operator<=>(const Edge&) const = default;
};

/// n-graph: vertices 1..n and a multiset of oriented edges, no tadpoles.
/// Edges are kept sorted so equal multisets compare equal.
class DiGraph {
 public:
  DiGraph() = default;
  DiGraph(std::uint32_t n, std::vector<Edge> edges);

  std::uint32_t n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint32_t multiplicity(Edge e) const;

  DiGraph without_edge(Edge e) const;  // removes one copy
  DiGraph with_edge(Edge e) const;

  auto operator<=>(const DiGraph&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
};

/// `n=3; edges=1->2,2->3`
std::string to_string(const DiGraph& g);

/// Some oriented cycle, traversed forward. Picks the least vertex that lies
/// on a cycle, then the least next vertex at every step.
std::optional<std::vector<Edge>> find_cycle(const DiGraph& g);
bool has_cycle(const DiGraph& g);

/// All simple oriented cycles as vertex sequences starting at their least
/// vertex. A cycle using a repeated edge is listed once.
std::vector<std::vector<std::uint32_t>> simple_cycles(const DiGraph& g);

/// sigma[i-1] is the image of vertex i.
using Permutation = std::vector<std::uint32_t>;

bool is_permutation(std::span<const std::uint32_t> sigma);
DiGraph apply_perm(std::span<const std::uint32_t> sigma, const DiGraph& g);
Permutation compose(std::span<const std::uint32_t> sigma, std::span<const std::uint32_t> tau);

/// Product over edges i->j of 1/(z_i - z_j).
DiagRat p_gamma(const DiGraph& g);

/// Disjoint union of oriented lines covering 1..n in canonical form: every
/// line starts at its least vertex and lines are sorted by first vertex.
class LineForest {
 public:
  using Line = std::vector<std::uint32_t>;

  LineForest() = default;
  LineForest(std::uint32_t n, std::vector<Line> lines);

  std::uint32_t n() const { return n_; }
  const std::vector<Line>& lines() const { return lines_; }
  std::uint32_t line_count() const { return static_cast<std::uint32_t>(lines_.size()); }
  std::size_t edge_count() const { return n_ - lines_.size(); }
  bool connected() const { return lines_.size() == 1; }

  /// 0-based index of the line containing vertex v.
  std::uint32_t line_of(std::uint32_t v) const;
  bool is_last(std::uint32_t v) const;
  std::uint32_t last_vertex(std::uint32_t line) const { return lines_[line].back(); }

  DiGraph graph() const;

  auto operator<=>(const LineForest&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<Line> lines_;
};

/// `1>2>3 | 4>5`
std::string to_string(const LineForest& f);

std::vector<LineForest> enumerate_line_forests(std::uint32_t n, std::uint32_t p);
std::vector<LineForest> enumerate_line_forests(std::uint32_t n);

/// Rational combination of line forests of a common arity.
class LineCombo {
 public:
  explicit LineCombo(std::uint32_t n = 0) : n_(n) {}

  std::uint32_t n() const { return n_; }
  const std::map<LineForest, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const LineForest& f) const;

  void add(const LineForest& f, const Scalar& c);
  LineCombo& operator+=(const LineCombo& other);
  LineCombo operator-() const;
  LineCombo scaled(const Scalar& c) const;

  bool operator==(const LineCombo&) const = default;

 private:
  std::uint32_t n_;
  std::map<LineForest, Scalar> terms_;
};

std::string to_string(const LineCombo& c);

}  // namespace chiral
