#include "chiral/classical.hpp"

#include <sstream>

#include "chiral/errors.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"

namespace chiral {

ClassicalOp::ClassicalOp(std::shared_ptr<const FreeDModule> module, std::uint32_t n, int degree)
    : module_(std::move(module)), n_(n), degree_(degree), forests_(enumerate_line_forests(n)) {
  if (!module_) throw DomainError("classical operation needs a module");
}

ClassicalOp::ClassicalOp(const ClassicalOp& other)
    : module_(other.module_),
      n_(other.n_),
      degree_(other.degree_),
      forests_(other.forests_),
      tables_(other.tables_) {}

ClassicalOp& ClassicalOp::operator=(const ClassicalOp& other) {
  if (this == &other) return *this;
  module_ = other.module_;
  n_ = other.n_;
  degree_ = other.degree_;
  forests_ = other.forests_;
  tables_ = other.tables_;
  std::lock_guard lock(cache_mutex_);
  cache_.clear();
  return *this;
}

void ClassicalOp::set(const LineForest& forest, const TensorKey& key, const VPoly& value) {
  if (forest.n() != n_ || key.size() != n_) throw ArityMismatch("value of the wrong arity");
  for (const TensorFactor& f : key) {
    if (f.gen >= module_->rank()) throw DomainError("unknown generator index");
  }
  for (const auto& [g, p] : value.terms()) {
    if (g >= module_->rank()) throw DomainError("unknown generator index");
  }
  if (value.is_zero()) {
    auto it = tables_.find(forest);
    if (it != tables_.end()) it->second.erase(key);
  } else {
    tables_[forest][key] = value;
  }
  std::lock_guard lock(cache_mutex_);
  cache_.clear();
}

VPoly ClassicalOp::derive(const LineForest& forest, const TensorKey& key) const {
  const auto& lines = forest.lines();
  for (std::uint32_t l = 0; l < lines.size(); ++l) {
    const std::uint32_t last = lines[l].back();
    if (key[last - 1].dpow == 0) continue;
    // Y(∂_last v) = -Λ_ℓ Y(v) - Σ_{i ∈ L_ℓ, i ≠ last} Y(∂_i v)
    TensorKey v = key;
    --v[last - 1].dpow;
    VPoly out = eval_key(forest, v).mul(-MPoly::variable(biglamvar(l + 1)));
    for (std::size_t a = 0; a + 1 < lines[l].size(); ++a) {
      TensorKey w = v;
      ++w[lines[l][a] - 1].dpow;
      out -= eval_key(forest, w);
    }
    return out;
  }
  return VPoly();
}

VPoly ClassicalOp::eval_key(const LineForest& forest, const TensorKey& key) const {
  if (key.size() != n_) throw ArityMismatch("tensor of the wrong arity");
  auto table = tables_.find(forest);
  if (table != tables_.end()) {
    auto it = table->second.find(key);
    if (it != table->second.end()) return it->second;
  }
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find({forest, key});
    if (it != cache_.end()) return it->second;
  }
  VPoly value = derive(forest, key);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::make_pair(forest, key), value);
  return value;
}

VPoly ClassicalOp::eval(const LineForest& forest, const TensorElem& v) const {
  VPoly out;
  for (const auto& [key, c] : v.terms()) out += eval_key(forest, key).scaled(c);
  return out;
}

QuotElem ClassicalOp::eval_class(const LineForest& forest, const TensorElem& v) const {
  return QuotElem(biglambda_world(forest.line_count()), eval(forest, v));
}

ValidationReport validate_classical(const ClassicalOp& Y) {
  ValidationReport report;
  const FreeDModule& m = Y.module();
  for (const auto& [forest, table] : Y.tables()) {
    const long s = static_cast<long>(forest.edge_count());
    const std::uint32_t p = forest.line_count();
    const SpectralWorld world = biglambda_world(p);
    for (const auto& [key, value] : table) {
      const std::string where = to_string(forest) + " : " + to_string(m, key);
      for (VarId v : value.variables()) {
        const bool allowed = v.kind == VarKind::D || (v.kind == VarKind::BigLambda && v.index >= 1 && v.index <= p);
        if (!allowed) report.violations.push_back(where + ": value uses " + to_string(v));
      }
      const long target = s + static_cast<long>(key_degree(m, key)) - Y.degree();
      for (const auto& [g, poly] : value.terms()) {
        if (static_cast<long>(m.degree(g)) != target) {
          report.violations.push_back(where + ": generator " + m.generator(g).name + " has degree " +
                                      std::to_string(m.degree(g)) + ", expected " + std::to_string(target));
        }
      }
      const auto& lines = forest.lines();
      for (std::uint32_t l = 0; l < lines.size(); ++l) {
        const std::uint32_t last = lines[l].back();
        if (key[last - 1].dpow == 0) continue;
        TensorKey v = key;
        --v[last - 1].dpow;
        VPoly total = Y.eval_key(forest, v).mul(MPoly::variable(biglamvar(l + 1)));
        for (std::uint32_t i : lines[l]) {
          TensorKey w = v;
          ++w[i - 1].dpow;
          total += Y.eval_key(forest, w);
        }
        if (!canonicalize(total, world).is_zero()) {
          report.violations.push_back(to_string(forest) + " : " + to_string(m, v) +
                                      ": (∂_G + Λ_G) relation fails on line " + std::to_string(l + 1));
        }
      }
    }
  }
  return report;
}

QuotElem eval_classical(const ClassicalOp& Y, const DiGraph& g, const TensorElem& v) {
  if (g.n() != Y.n() || v.n() != Y.n()) throw ArityMismatch("graph, tensor and operation arities differ");
  VPoly total;
  if (Y.n() == 0) {
    total = Y.eval(LineForest(), v);
  } else {
    const LineCombo combo = decompose_to_lines(g);
    for (const auto& [forest, c] : combo.terms()) {
      VPoly value = Y.eval(forest, v);
      for (std::uint32_t l = 0; l < forest.line_count(); ++l) {
        MPoly sum;
        for (std::uint32_t i : forest.lines()[l]) sum += MPoly::variable(lamvar(i));
        value = value.substitute(biglamvar(l + 1), sum);
      }
      total += value.scaled(c);
    }
  }
  return QuotElem(lambda_world(Y.n()), total);
}

namespace {

bool reduced(const LineForest& forest, const TensorKey& key) {
  for (const auto& line : forest.lines()) {
    if (key[line.back() - 1].dpow != 0) return false;
  }
  return true;
}

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Random polynomial of degree <= max_lambda in Λ1..Λp and <= 1 in d.
MPoly random_coeff(std::mt19937_64& rng, std::uint32_t p, std::uint32_t max_lambda) {
  std::vector<Monomial> lam{Monomial()};
  for (std::uint32_t deg = 1; deg <= max_lambda; ++deg) {
    std::vector<Monomial> next;
    for (const Monomial& m : lam) {
      if (m.total_degree() != deg - 1) continue;
      for (std::uint32_t l = 1; l <= p; ++l) next.push_back(m * Monomial::of(biglamvar(l)));
    }
    lam.insert(lam.end(), next.begin(), next.end());
  }
  MPoly out;
  for (const Monomial& m : lam) {
    for (std::uint32_t d = 0; d <= 1; ++d) {
      if (uniform(rng, 0, 1) == 0) continue;
      out.add_term(m * Monomial::of(dvar(), d), Scalar(uniform(rng, -3, 3)));
    }
  }
  return out;
}

}  // namespace

ClassicalOp random_classical(std::shared_ptr<const FreeDModule> module, std::uint32_t n, int degree,
                             std::mt19937_64& rng) {
  ClassicalOp Y(module, n, degree);
  const auto keys = tensor_keys(*module, n, 1);
  for (const LineForest& forest : Y.forests()) {
    const long s = static_cast<long>(forest.edge_count());
    for (const TensorKey& key : keys) {
      if (!reduced(forest, key)) continue;
      const long target = s + static_cast<long>(key_degree(*module, key)) - degree;
      VPoly value;
      for (std::uint32_t g = 0; g < module->rank(); ++g) {
        if (static_cast<long>(module->degree(g)) != target) continue;
        value.add(g, random_coeff(rng, forest.line_count(), 1));
      }
      Y.set(forest, key, value);
    }
  }
  return Y;
}

ClassicalOp perturb_representatives(const ClassicalOp& Y, std::mt19937_64& rng, std::uint32_t max_degree) {
  ClassicalOp out = Y;
  const FreeDModule& m = Y.module();
  const auto keys = tensor_keys(m, Y.n(), 1);
  for (const LineForest& forest : Y.forests()) {
    const long s = static_cast<long>(forest.edge_count());
    MPoly relation = MPoly::variable(dvar());
    for (std::uint32_t l = 1; l <= forest.line_count(); ++l) relation += MPoly::variable(biglamvar(l));
    for (const TensorKey& key : keys) {
      if (!reduced(forest, key)) continue;
      const long target = s + static_cast<long>(key_degree(m, key)) - Y.degree();
      VPoly extra;
      for (std::uint32_t g = 0; g < m.rank(); ++g) {
        if (static_cast<long>(m.degree(g)) == target) {
          extra.add(g, random_coeff(rng, forest.line_count(), max_degree) * relation);
        }
      }
      if (extra.is_zero()) continue;
      out.set(forest, key, Y.eval_key(forest, key) + extra);
    }
  }
  return out;
}

namespace {

std::string forest_text(const LineForest& f) { return f.n() == 0 ? "." : to_string(f); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string to_string(const ClassicalOp& Y) {
  std::string s = "arity " + std::to_string(Y.n()) + "\ndegree " + std::to_string(Y.degree()) + "\n";
  for (const auto& [forest, table] : Y.tables()) {
    for (const auto& [key, value] : table) {
      s += forest_text(forest) + " : " + to_string(Y.module(), key) + " -> " + to_string(Y.module(), value) + "\n";
    }
  }
  return s;
}

ClassicalOp parse_classical(const std::string& text, std::shared_ptr<const FreeDModule> module) {
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  long arity = -1;
  long degree = 0;
  bool have_degree = false;
  std::vector<std::tuple<std::size_t, LineForest, TensorKey, VPoly>> entries;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("arity", 0) == 0 || line.rfind("degree", 0) == 0) {
      const bool is_arity = line[0] == 'a';
      const std::string number = trim(line.substr(is_arity ? 5 : 6));
      try {
        std::size_t used = 0;
        const long v = std::stol(number, &used);
        if (used != number.size()) throw std::invalid_argument("trailing text");
        (is_arity ? arity : degree) = v;
        if (!is_arity) have_degree = true;
      } catch (const std::exception&) {
        throw ParseError("expected an integer", at);
      }
      continue;
    }
    const auto colon = line.find(':');
    const auto arrow = line.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
      throw ParseError("expected `<forest> : <tensor> -> <value>`", at);
    }
    const std::string forest_part = trim(line.substr(0, colon));
    LineForest forest = forest_part == "." ? LineForest() : parse_forest(forest_part);
    TensorKey key = parse_tensor_key(trim(line.substr(colon + 1, arrow - colon - 1)), *module);
    VPoly value = parse_vpoly(trim(line.substr(arrow + 2)), *module);
    entries.emplace_back(at, std::move(forest), std::move(key), std::move(value));
  }
  if (arity < 0) throw ParseError("missing `arity` line", 0);
  if (!have_degree) throw ParseError("missing `degree` line", 0);
  ClassicalOp Y(std::move(module), static_cast<std::uint32_t>(arity), static_cast<int>(degree));
  for (const auto& [at, forest, key, value] : entries) {
    if (forest.n() != Y.n() || key.size() != Y.n()) throw ParseError("entry arity differs from header", at);
    Y.set(forest, key, value);
  }
  return Y;
}

}  // namespace chiral
