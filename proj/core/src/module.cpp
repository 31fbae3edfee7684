#include "chiral/module.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "chiral/errors.hpp"

namespace chiral {

// ---------------------------------------------------------------- FreeDModule

FreeDModule::FreeDModule(std::vector<Generator> generators) : gens_(std::move(generators)) {
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    const std::string& name = gens_[a].name;
    if (name.empty()) throw DomainError("generator with empty name");
    if (name == "d") throw DomainError("`d` is reserved for ∂");
    for (std::size_t b = 0; b < a; ++b) {
      if (gens_[b].name == name) throw DomainError("duplicate generator " + name);
    }
  }
}

std::optional<std::uint32_t> FreeDModule::find(const std::string& name) const {
  for (std::uint32_t g = 0; g < gens_.size(); ++g) {
    if (gens_[g].name == name) return g;
  }
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

FreeDModule parse_module(const std::string& text) {
  std::vector<Generator> gens;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
    if (parts.size() < 2 || parts.size() > 3) {
      throw ParseError("expected name:degree[:odd]", line_start);
    }
    Generator g;
    g.name = parts[0];
    for (char c : g.name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw ParseError("generator names are alphanumeric", line_start);
      }
    }
    if (g.name.empty() || std::isdigit(static_cast<unsigned char>(g.name[0]))) {
      throw ParseError("generator name must start with a letter", line_start);
    }
    try {
      std::size_t used = 0;
      const long d = std::stol(parts[1], &used);
      if (used != parts[1].size() || d < 0) throw std::invalid_argument("degree");
      g.degree = static_cast<std::uint32_t>(d);
    } catch (const std::exception&) {
      throw ParseError("degree must be a non-negative integer", line_start);
    }
    if (parts.size() == 3) {
      if (parts[2] != "odd" && parts[2] != "even") throw ParseError("parity must be odd or even", line_start);
      g.odd = parts[2] == "odd";
    }
    gens.push_back(std::move(g));
  }
  return FreeDModule(std::move(gens));
}

std::string to_string(const FreeDModule& m) {
  std::string s;
  for (const Generator& g : m.generators()) {
    s += g.name + ":" + std::to_string(g.degree) + (g.odd ? ":odd" : "") + "\n";
  }
  return s;
}

// ----------------------------------------------------------------- tensors

std::uint32_t key_degree(const FreeDModule& m, const TensorKey& k) {
  std::uint32_t d = 0;
  for (const TensorFactor& f : k) d += m.degree(f.gen);
  return d;
}

std::uint32_t key_dpow(const TensorKey& k) {
  std::uint32_t d = 0;
  for (const TensorFactor& f : k) d += f.dpow;
  return d;
}

std::vector<TensorKey> tensor_keys(const FreeDModule& m, std::uint32_t n, std::uint32_t max_dpow) {
  std::vector<TensorKey> out;
  TensorKey key(n);
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t budget) {
    if (i == n) {
      out.push_back(key);
      return;
    }
    for (std::uint32_t g = 0; g < m.rank(); ++g) {
      for (std::uint32_t d = 0; d <= budget; ++d) {
        key[i] = {g, d};
        rec(i + 1, budget - d);
      }
    }
  };
  rec(0, max_dpow);
  return out;
}

std::string to_string(const FreeDModule& m, const TensorKey& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i > 0) s += ", ";
    if (k[i].dpow == 1) s += "d ";
    if (k[i].dpow > 1) s += "d^" + std::to_string(k[i].dpow) + " ";
    s += m.generator(k[i].gen).name;
  }
  return s;
}

TensorElem TensorElem::basis(const TensorKey& k, const Scalar& c) {
  TensorElem t(static_cast<std::uint32_t>(k.size()));
  t.add(k, c);
  return t;
}

void TensorElem::add(const TensorKey& k, const Scalar& c) {
  if (k.size() != n_) throw ArityMismatch("tensor of the wrong length");
  if (chiral::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (chiral::is_zero(it->second)) terms_.erase(it);
  }
}

TensorElem& TensorElem::operator+=(const TensorElem& other) {
  if (other.n_ != n_) throw ArityMismatch("adding tensors of different arity");
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

TensorElem TensorElem::scaled(const Scalar& c) const {
  TensorElem t(n_);
  for (const auto& [k, v] : terms_) t.add(k, v * c);
  return t;
}

TensorElem TensorElem::partial(std::uint32_t i, std::uint32_t k) const {
  if (i < 1 || i > n_) throw DomainError("∂_" + std::to_string(i) + " out of range");
  TensorElem t(n_);
  for (const auto& [key, c] : terms_) {
    TensorKey raised = key;
    raised[i - 1].dpow += k;
    t.add(raised, c);
  }
  return t;
}

TensorElem apply_poly_partials(const MPoly& P, const TensorElem& v) {
  TensorElem out(v.n());
  for (const auto& [m, c] : P.terms()) {
    TensorElem term = v.scaled(c);
    for (const auto& [var, e] : m.factors()) {
      if (var.kind != VarKind::X) throw DomainError("apply_poly_partials expects a polynomial in x variables");
      term = term.partial(var.index, e);
    }
    out += term;
  }
  return out;
}

// ------------------------------------------------------------------- VPoly

VPoly VPoly::generator(std::uint32_t g, const MPoly& coeff) {
  VPoly v;
  v.add(g, coeff);
  return v;
}

MPoly VPoly::coefficient(std::uint32_t g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? MPoly() : it->second;
}

void VPoly::add(std::uint32_t g, const MPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

VPoly& VPoly::operator+=(const VPoly& other) {
  for (const auto& [g, p] : other.terms_) add(g, p);
  return *this;
}

VPoly& VPoly::operator-=(const VPoly& other) {
  for (const auto& [g, p] : other.terms_) add(g, -p);
  return *this;
}

VPoly VPoly::scaled(const Scalar& c) const {
  VPoly v;
  for (const auto& [g, p] : terms_) v.add(g, p * c);
  return v;
}

VPoly VPoly::mul(const MPoly& q) const {
  VPoly v;
  for (const auto& [g, p] : terms_) v.add(g, p * q);
  return v;
}

VPoly VPoly::substitute(VarId var, const MPoly& value) const {
  VPoly v;
  for (const auto& [g, p] : terms_) v.add(g, p.substitute(var, value));
  return v;
}

VPoly VPoly::diff(VarId var) const {
  VPoly v;
  for (const auto& [g, p] : terms_) v.add(g, p.diff(var));
  return v;
}

VPoly VPoly::project_degree(const FreeDModule& m, std::uint32_t degree) const {
  VPoly v;
  for (const auto& [g, p] : terms_) {
    if (m.degree(g) == degree) v.add(g, p);
  }
  return v;
}

std::set<VarId> VPoly::variables() const {
  std::set<VarId> vars;
  for (const auto& [g, p] : terms_) {
    auto vs = p.variables();
    vars.insert(vs.begin(), vs.end());
  }
  return vars;
}

std::string to_string(const FreeDModule& m, const VPoly& v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [g, p] : v.terms()) {
    std::string coeff = to_string(p);
    std::string term;
    if (coeff == "1") {
      term = m.generator(g).name;
    } else if (coeff == "-1") {
      term = "-" + m.generator(g).name;
    } else if (p.size() == 1) {
      term = coeff + "*" + m.generator(g).name;
    } else {
      term = "(" + coeff + ")*" + m.generator(g).name;
    }
    if (s.empty()) {
      s = term;
    } else if (term[0] == '-') {
      s += " - " + term.substr(1);
    } else {
      s += " + " + term;
    }
  }
  return s;
}

// ------------------------------------------------------------ quotient

VPoly canonicalize(const VPoly& raw, SpectralWorld world) {
  if (world.count == 0) return raw.substitute(dvar(), MPoly());
  MPoly value = -MPoly::variable(dvar());
  for (std::uint32_t i = 1; i < world.count; ++i) value -= MPoly::variable(spectral_var(world, i));
  return raw.substitute(spectral_var(world, world.count), value);
}

QuotElem& QuotElem::operator+=(const QuotElem& other) {
  if (!(world_ == other.world_)) throw ArityMismatch("adding classes from different quotients");
  rep_ += other.rep_;
  return *this;
}

QuotElem QuotElem::operator-(const QuotElem& other) const {
  if (!(world_ == other.world_)) throw ArityMismatch("subtracting classes from different quotients");
  QuotElem r = *this;
  r.rep_ -= other.rep_;
  return r;
}

QuotElem QuotElem::diff_difference(std::uint32_t j, std::uint32_t i) const {
  if (i < 1 || j < 1 || i > world_.count || j > world_.count) throw DomainError("spectral index out of range");
  QuotElem r;
  r.world_ = world_;
  r.rep_ = rep_.diff(spectral_var(world_, j)) - rep_.diff(spectral_var(world_, i));
  return r;
}

}  // namespace chiral
