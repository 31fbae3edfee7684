#include "chiral/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "chiral/errors.hpp"

namespace chiral {

// ------------------------------------------------------------------ DiGraph

DiGraph::DiGraph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.from == e.to) throw DomainError("tadpole at vertex " + std::to_string(e.from));
    if (e.from < 1 || e.from > n_ || e.to < 1 || e.to > n_) {
      throw DomainError("edge label outside 1.." + std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

std::uint32_t DiGraph::multiplicity(Edge e) const {
  auto [lo, hi] = std::equal_range(edges_.begin(), edges_.end(), e);
  return static_cast<std::uint32_t>(hi - lo);
}

DiGraph DiGraph::without_edge(Edge e) const {
  DiGraph g = *this;
  auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), e);
  if (it == g.edges_.end() || *it != e) throw DomainError("edge not present");
  g.edges_.erase(it);
  return g;
}

DiGraph DiGraph::with_edge(Edge e) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(e);
  return DiGraph(n_, std::move(edges));
}

std::string to_string(const DiGraph& g) {
  std::string s = "n=" + std::to_string(g.n()) + "; edges=";
  bool first = true;
  for (const Edge& e : g.edges()) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(e.from) + "->" + std::to_string(e.to);
  }
  return s;
}

namespace {

std::vector<std::vector<std::uint32_t>> adjacency(const DiGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.n() + 1);
  for (const Edge& e : g.edges()) adj[e.from].push_back(e.to);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

}  // namespace

std::optional<std::vector<Edge>> find_cycle(const DiGraph& g) {
  auto adj = adjacency(g);
  for (std::uint32_t start = 1; start <= g.n(); ++start) {
    // Depth-first search for a path back to `start` through larger vertices.
    std::vector<std::uint32_t> path{start};
    std::vector<char> visited(g.n() + 1, 0);
    visited[start] = 1;
    std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t u) {
      for (std::uint32_t v : adj[u]) {
        if (v == start) return true;
        if (v < start || visited[v]) continue;
        visited[v] = 1;
        path.push_back(v);
        if (dfs(v)) return true;
        path.pop_back();
      }
      return false;
    };
    if (dfs(start)) {
      std::vector<Edge> cycle;
      for (std::size_t k = 0; k < path.size(); ++k) {
        cycle.push_back({path[k], path[(k + 1) % path.size()]});
      }
      return cycle;
    }
  }
  return std::nullopt;
}

bool has_cycle(const DiGraph& g) { return find_cycle(g).has_value(); }

std::vector<std::vector<std::uint32_t>> simple_cycles(const DiGraph& g) {
  auto adj = adjacency(g);
  std::vector<std::vector<std::uint32_t>> cycles;
  for (std::uint32_t start = 1; start <= g.n(); ++start) {
    std::vector<std::uint32_t> path{start};
    std::vector<char> on_path(g.n() + 1, 0);
    on_path[start] = 1;
    std::function<void(std::uint32_t)> dfs = [&](std::uint32_t u) {
      for (std::uint32_t v : adj[u]) {
        if (v == start) {
          cycles.push_back(path);
        } else if (v > start && !on_path[v]) {
          on_path[v] = 1;
          path.push_back(v);
          dfs(v);
          path.pop_back();
          on_path[v] = 0;
        }
      }
    };
    dfs(start);
  }
  return cycles;
}

bool is_permutation(std::span<const std::uint32_t> sigma) {
  std::vector<char> seen(sigma.size() + 1, 0);
  for (std::uint32_t s : sigma) {
    if (s < 1 || s > sigma.size() || seen[s]) return false;
    seen[s] = 1;
  }
  return true;
}

DiGraph apply_perm(std::span<const std::uint32_t> sigma, const DiGraph& g) {
  if (sigma.size() != g.n() || !is_permutation(sigma)) {
    throw DomainError("apply_perm needs a permutation of 1.." + std::to_string(g.n()));
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({sigma[e.from - 1], sigma[e.to - 1]});
  return DiGraph(g.n(), std::move(edges));
}

Permutation compose(std::span<const std::uint32_t> sigma, std::span<const std::uint32_t> tau) {
  if (sigma.size() != tau.size()) throw ArityMismatch("compose: permutations of different size");
  Permutation out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out[i] = sigma[tau[i] - 1];
  return out;
}

DiagRat p_gamma(const DiGraph& g) {
  auto vars = DiagRat::zvars(g.n());
  DiagRat r = DiagRat::constant(vars, 1);
  for (const Edge& e : g.edges()) {
    r = r * DiagRat::diagonal_power(vars, zvar(e.from), zvar(e.to), -1);
  }
  return r;
}

// --------------------------------------------------------------- LineForest

LineForest::LineForest(std::uint32_t n, std::vector<Line> lines) : n_(n), lines_(std::move(lines)) {
  std::vector<char> seen(n_ + 1, 0);
  std::uint32_t covered = 0;
  for (const Line& line : lines_) {
    if (line.empty()) throw DomainError("empty line in forest");
    for (std::uint32_t v : line) {
      if (v < 1 || v > n_ || seen[v]) throw DomainError("forest lines must partition 1.." + std::to_string(n_));
      seen[v] = 1;
      ++covered;
    }
    if (*std::min_element(line.begin(), line.end()) != line.front()) {
      throw DomainError("line must start at its least vertex");
    }
  }
  if (covered != n_) throw DomainError("forest lines must cover 1.." + std::to_string(n_));
  for (std::size_t k = 1; k < lines_.size(); ++k) {
    if (lines_[k - 1].front() >= lines_[k].front()) {
      throw DomainError("lines must be ordered by first vertex");
    }
  }
}

std::uint32_t LineForest::line_of(std::uint32_t v) const {
  for (std::uint32_t l = 0; l < lines_.size(); ++l) {
    if (std::find(lines_[l].begin(), lines_[l].end(), v) != lines_[l].end()) return l;
  }
  throw DomainError("vertex " + std::to_string(v) + " not in forest");
}

bool LineForest::is_last(std::uint32_t v) const {
  return lines_[line_of(v)].back() == v;
}

DiGraph LineForest::graph() const {
  std::vector<Edge> edges;
  for (const Line& line : lines_) {
    for (std::size_t k = 1; k < line.size(); ++k) edges.push_back({line[k - 1], line[k]});
  }
  return DiGraph(n_, std::move(edges));
}

std::string to_string(const LineForest& f) {
  std::string s;
  for (std::size_t l = 0; l < f.lines().size(); ++l) {
    if (l > 0) s += " | ";
    for (std::size_t k = 0; k < f.lines()[l].size(); ++k) {
      if (k > 0) s += '>';
      s += std::to_string(f.lines()[l][k]);
    }
  }
  return s;
}

std::vector<LineForest> enumerate_line_forests(std::uint32_t n, std::uint32_t p) {
  std::vector<LineForest> out;
  if (p < 1 || p > n) return out;
  std::vector<char> used(n + 1, 0);
  std::vector<LineForest::Line> lines;

  std::function<void()> open_line;
  std::function<void()> extend = [&]() {
    // Extending first gives 1>2 | 3 before 1 | 2>3.
    for (std::uint32_t v = 1; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      lines.back().push_back(v);
      extend();
      lines.back().pop_back();
      used[v] = 0;
    }
    open_line();
  };
  open_line = [&]() {
    std::uint32_t next = 0;
    for (std::uint32_t v = 1; v <= n; ++v) {
      if (!used[v]) {
        next = v;
        break;
      }
    }
    if (next == 0) {
      if (lines.size() == p) out.emplace_back(n, lines);
      return;
    }
    if (lines.size() == p) return;
    used[next] = 1;
    lines.push_back({next});
    extend();
    lines.pop_back();
    used[next] = 0;
  };
  open_line();
  return out;
}

std::vector<LineForest> enumerate_line_forests(std::uint32_t n) {
  if (n == 0) return {LineForest()};
  std::vector<LineForest> out;
  for (std::uint32_t p = n; p >= 1; --p) {
    auto part = enumerate_line_forests(n, p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------- LineCombo

Scalar LineCombo::coefficient(const LineForest& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void LineCombo::add(const LineForest& f, const Scalar& c) {
  if (f.n() != n_) throw ArityMismatch("line combination of mixed arity");
  if (chiral::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(f, c);
  if (!inserted) {
    it->second += c;
    if (chiral::is_zero(it->second)) terms_.erase(it);
  }
}

LineCombo& LineCombo::operator+=(const LineCombo& other) {
  for (const auto& [f, c] : other.terms_) add(f, c);
  return *this;
}

LineCombo LineCombo::operator-() const { return scaled(-1); }

LineCombo LineCombo::scaled(const Scalar& c) const {
  LineCombo r(n_);
  for (const auto& [f, coeff] : terms_) r.add(f, coeff * c);
  return r;
}

std::string to_string(const LineCombo& c) {
  if (c.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [f, coeff] : c.terms()) {
    Scalar a = coeff;
    if (!first) s += sgn(a) < 0 ? " - " : " + ";
    else if (sgn(a) < 0) s += "-";
    if (sgn(a) < 0) a = -a;
    first = false;
    if (a != 1) s += a.get_str() + "*";
    s += "[" + to_string(f) + "]";
  }
  return s;
}

}  // namespace chiral
