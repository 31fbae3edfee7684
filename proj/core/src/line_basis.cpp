#include "chiral/line_basis.hpp"

#include <algorithm>
#include <map>

#include "chiral/errors.hpp"
#include "chiral/residue.hpp"

namespace chiral {

LineCombo decompose_to_lines(const DiGraph& g) {
  LineCombo out(g.n());
  if (g.edge_count() >= g.n()) return out;  // no forest has that many edges
  const auto p = static_cast<std::uint32_t>(g.n() - g.edge_count());
  const DiagRat pg = p_gamma(g);
  for (const LineForest& f : enumerate_line_forests(g.n(), p)) {
    const DiagRat c = gamma_residue(pg, f);
    if (!c.is_constant()) {
      throw InternalError("residue of p_Γ along " + to_string(f) + " is not constant: " + to_string(c));
    }
    out.add(f, c.numerator().constant_term());
  }
  return out;
}

namespace {

using Lines = std::vector<LineForest::Line>;
using LinesCombo = std::map<Lines, Scalar>;

void accumulate(LinesCombo& into, const LinesCombo& part, const Scalar& c) {
  for (const auto& [lines, v] : part) {
    Scalar& slot = into[lines];
    slot += c * v;
    if (is_zero(slot)) into.erase(lines);
  }
}

// Writes g, a graph on vertex set `vertices`, as a combination of line
// forests in which `start` begins the first line and every other line begins
// at its least vertex.
LinesCombo rewrite(const std::vector<Edge>& edges, const std::vector<std::uint32_t>& vertices,
                   std::uint32_t start, std::uint32_t n) {
  if (vertices.empty()) return {{Lines{}, Scalar(1)}};
  if (has_cycle(DiGraph(n, edges))) return {};

  std::vector<std::size_t> at_start;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].from == start || edges[k].to == start) at_start.push_back(k);
  }

  if (at_start.size() >= 2) {
    // Orient the two edges as a -> start -> b; reversing an edge costs a sign.
    Scalar sign = 1;
    Edge in = edges[at_start[0]];
    Edge out = edges[at_start[1]];
    if (in.to != start) {
      in = {in.to, in.from};
      sign = -sign;
    }
    if (out.from != start) {
      out = {out.to, out.from};
      sign = -sign;
    }
    const std::uint32_t a = in.from;
    const std::uint32_t b = out.to;
    if (a == b) return {};  // a 2-cycle after reorientation
    // The 3-cycle a -> start -> b -> a gives
    // Γ = -(Γ - (a->start) + (b->a)) - (Γ - (start->b) + (b->a)).
    std::vector<Edge> rest;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (k != at_start[0] && k != at_start[1]) rest.push_back(edges[k]);
    }
    std::vector<Edge> drop_in = rest;
    drop_in.push_back(out);
    drop_in.push_back({b, a});
    std::vector<Edge> drop_out = rest;
    drop_out.push_back(in);
    drop_out.push_back({b, a});
    LinesCombo result;
    accumulate(result, rewrite(drop_in, vertices, start, n), -sign);
    accumulate(result, rewrite(drop_out, vertices, start, n), -sign);
    return result;
  }

  std::vector<std::uint32_t> others;
  for (std::uint32_t v : vertices) {
    if (v != start) others.push_back(v);
  }

  if (at_start.size() == 1) {
    Edge e = edges[at_start[0]];
    Scalar sign = 1;
    if (e.from != start) {
      e = {e.to, e.from};
      sign = -1;
    }
    std::vector<Edge> rest;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (k != at_start[0]) rest.push_back(edges[k]);
    }
    LinesCombo result;
    for (const auto& [lines, c] : rewrite(rest, others, e.to, n)) {
      Lines extended = lines;
      extended.front().insert(extended.front().begin(), start);
      result[extended] += sign * c;
    }
    return result;
  }

  LinesCombo result;
  const std::uint32_t next = others.empty() ? 0 : others.front();
  for (const auto& [lines, c] : rewrite(edges, others, next, n)) {
    Lines extended{{start}};
    extended.insert(extended.end(), lines.begin(), lines.end());
    result[extended] += c;
  }
  return result;
}

}  // namespace

LineCombo rewrite_to_lines(const DiGraph& g) {
  LineCombo out(g.n());
  if (g.n() == 0) return out;
  std::vector<std::uint32_t> vertices(g.n());
  for (std::uint32_t v = 1; v <= g.n(); ++v) vertices[v - 1] = v;
  for (const auto& [lines, c] : rewrite(g.edges(), vertices, 1, g.n())) {
    Lines sorted = lines;
    std::sort(sorted.begin(), sorted.end());
    out.add(LineForest(g.n(), std::move(sorted)), c);
  }
  return out;
}

std::vector<DiGraph> enumerate_graphs(std::uint32_t n, std::uint32_t max_mult) {
  std::vector<Edge> pairs;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (i != j) pairs.push_back({i, j});
    }
  }
  std::vector<DiGraph> out;
  std::vector<std::uint32_t> mult(pairs.size(), 0);
  while (true) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      for (std::uint32_t m = 0; m < mult[k]; ++m) edges.push_back(pairs[k]);
    }
    out.emplace_back(n, std::move(edges));
    std::size_t k = 0;
    while (k < pairs.size() && mult[k] == max_mult) mult[k++] = 0;
    if (k == pairs.size()) break;
    ++mult[k];
  }
  return out;
}

std::vector<SparseVec> cycle_relation_span(std::uint32_t n, std::uint32_t max_mult) {
  const auto graphs = enumerate_graphs(n, max_mult);
  std::map<DiGraph, std::size_t> index;
  for (std::size_t k = 0; k < graphs.size(); ++k) index.emplace(graphs[k], k);

  std::vector<SparseVec> rels;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const DiGraph& g = graphs[k];
    const auto cycles = simple_cycles(g);
    if (cycles.empty()) continue;
    rels.push_back({{k, Scalar(1)}});
    for (const auto& cycle : cycles) {
      SparseVec rel;
      for (std::size_t a = 0; a < cycle.size(); ++a) {
        const Edge e{cycle[a], cycle[(a + 1) % cycle.size()]};
        const std::size_t col = index.at(g.without_edge(e));
        Scalar& slot = rel[col];
        slot += 1;
        if (is_zero(slot)) rel.erase(col);
      }
      if (!rel.empty()) rels.push_back(std::move(rel));
    }
  }
  return rels;
}

std::size_t relation_quotient_dimension(std::uint32_t n, std::uint32_t max_mult) {
  const std::size_t total = enumerate_graphs(n, max_mult).size();
  return total - rank(cycle_relation_span(n, max_mult));
}

}  // namespace chiral
