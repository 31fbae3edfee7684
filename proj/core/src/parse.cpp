#include "chiral/parse.hpp"

#include <cctype>
#include <set>
#include <algorithm>
#include <map>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected `" + std::string(1, s_[pos_]) + "`");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprAst expr() {
    skip_ws();
    const std::size_t start = pos_;
    ExprAst lhs;
    if (accept('-')) {
      ExprAst t = term();
      lhs.kind = ExprAst::Kind::Negate;
      lhs.position = start;
      lhs.children.push_back(std::move(t));
    } else {
      lhs = term();
    }
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      ExprAst::Kind kind;
      if (accept('+')) {
        kind = ExprAst::Kind::Sum;
      } else if (accept('-')) {
        kind = ExprAst::Kind::Difference;
      } else {
        break;
      }
      ExprAst node;
      node.kind = kind;
      node.position = at;
      node.children.push_back(std::move(lhs));
      node.children.push_back(term());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprAst term() {
    ExprAst lhs = factor();
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('*')) break;
      ExprAst node;
      node.kind = ExprAst::Kind::Product;
      node.position = at;
      node.children.push_back(std::move(lhs));
      node.children.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprAst factor() {
    ExprAst base = atom();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip_ws();
    bool negative = false;
    if (accept('-')) negative = true;
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer exponent");
    const std::string digits = take_digits();
    if (digits.size() > 9) fail("exponent too large");
    ExprAst node;
    node.kind = ExprAst::Kind::Power;
    node.position = at;
    node.exponent = std::stol(digits) * (negative ? -1 : 1);
    node.children.push_back(std::move(base));
    return node;
  }

  std::string take_digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  ExprAst atom() {
    skip_ws();
    ExprAst node;
    node.position = pos_;
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprAst inner = expr();
      if (!accept(')')) fail("expected `)`");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text = take_digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a denominator");
        const std::string den = take_digits();
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        text += "/" + den;
      }
      node.kind = ExprAst::Kind::Number;
      node.number = Scalar(text);
      node.number.canonicalize();
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "d") {
        node.kind = ExprAst::Kind::Variable;
        node.var = dvar();
        return node;
      }
      static const std::string kinds = "zwlLx";
      if (word.size() >= 2 && kinds.find(word[0]) != std::string::npos &&
          word.find_first_not_of("0123456789", 1) == std::string::npos) {
        if (word.size() > 10) throw ParseError("variable index too large", start);
        const auto index = static_cast<std::uint32_t>(std::stoul(word.substr(1)));
        if (index == 0) throw ParseError("variable indices start at 1", start);
        node.kind = ExprAst::Kind::Variable;
        switch (word[0]) {
          case 'z': node.var = zvar(index); break;
          case 'w': node.var = wvar(index); break;
          case 'l': node.var = lamvar(index); break;
          case 'L': node.var = biglamvar(index); break;
          default: node.var = xvar(index); break;
        }
        return node;
      }
      node.kind = ExprAst::Kind::Name;
      node.name = word;
      return node;
    }
    fail("unexpected `" + std::string(1, c) + "`");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// Splits f into c * ∏ (a - b)^{k}, k of either sign, or returns false.
bool diagonal_factorization(const DiagRat& f, Scalar& c, std::map<Diagonal, long>& powers) {
  if (f.is_zero()) return false;
  MPoly num = f.numerator();
  const auto& vars = f.vars();
  for (std::size_t a = 0; a < vars.size(); ++a) {
    for (std::size_t b = a + 1; b < vars.size(); ++b) {
      while (auto q = num.divide_by_difference(vars[a], vars[b])) {
        num = std::move(*q);
        ++powers[{vars[a], vars[b]}];
      }
    }
  }
  if (!num.is_constant()) return false;
  c = num.constant_term();
  for (const auto& [d, k] : f.poles()) powers[d] -= static_cast<long>(k);
  return true;
}

DiagRat power(const DiagRat& base, long e, std::size_t position) {
  if (e >= 0) {
    DiagRat r = DiagRat::constant(base.vars(), 1);
    for (long k = 0; k < e; ++k) r = r * base;
    return r;
  }
  Scalar c;
  std::map<Diagonal, long> powers;
  if (!diagonal_factorization(base, c, powers)) {
    throw ParseError("negative power of a non-diagonal expression", position);
  }
  DiagRat inv = DiagRat::constant(base.vars(), Scalar(1) / c);
  for (const auto& [d, k] : powers) {
    if (k != 0) inv = inv * DiagRat::diagonal_power(base.vars(), d.a, d.b, static_cast<int>(-k));
  }
  return power(inv, -e, position);
}

DiagRat elaborate_rat(const ExprAst& e, const std::vector<VarId>& vars) {
  switch (e.kind) {
    case ExprAst::Kind::Number:
      return DiagRat::constant(vars, e.number);
    case ExprAst::Kind::Variable:
      if (!std::binary_search(vars.begin(), vars.end(), e.var)) {
        throw ParseError("variable " + to_string(e.var) + " is out of range", e.position);
      }
      return DiagRat(vars, MPoly::variable(e.var));
    case ExprAst::Kind::Name:
      throw ParseError("unknown symbol `" + e.name + "`", e.position);
    case ExprAst::Kind::Sum:
      return elaborate_rat(e.children[0], vars) + elaborate_rat(e.children[1], vars);
    case ExprAst::Kind::Difference:
      return elaborate_rat(e.children[0], vars) - elaborate_rat(e.children[1], vars);
    case ExprAst::Kind::Product:
      return elaborate_rat(e.children[0], vars) * elaborate_rat(e.children[1], vars);
    case ExprAst::Kind::Negate:
      return -elaborate_rat(e.children[0], vars);
    case ExprAst::Kind::Power:
      return power(elaborate_rat(e.children[0], vars), e.exponent, e.position);
  }
  throw InternalError("unhandled expression node");
}

// Value of an expression that may involve generators of V linearly.
struct Mixed {
  bool vector = false;
  MPoly scalar;
  VPoly vec;
};

Mixed mixed(const ExprAst& e, const FreeDModule* m) {
  auto scalar = [](MPoly p) { return Mixed{false, std::move(p), {}}; };
  auto combine = [&](const Mixed& a, const Mixed& b, const Scalar& sign) {
    if (!a.vector && !b.vector) return scalar(a.scalar + b.scalar * sign);
    if ((!a.vector && !a.scalar.is_zero()) || (!b.vector && !b.scalar.is_zero())) {
      throw ParseError("cannot add a scalar to a module element", e.position);
    }
    Mixed r{true, {}, a.vec};
    r.vec += b.vec.scaled(sign);
    return r;
  };
  switch (e.kind) {
    case ExprAst::Kind::Number:
      return scalar(MPoly(e.number));
    case ExprAst::Kind::Variable:
      return scalar(MPoly::variable(e.var));
    case ExprAst::Kind::Name: {
      if (m == nullptr) throw ParseError("unknown symbol `" + e.name + "`", e.position);
      auto g = m->find(e.name);
      if (!g) throw ParseError("unknown generator `" + e.name + "`", e.position);
      return Mixed{true, {}, VPoly::generator(*g)};
    }
    case ExprAst::Kind::Sum:
      return combine(mixed(e.children[0], m), mixed(e.children[1], m), 1);
    case ExprAst::Kind::Difference:
      return combine(mixed(e.children[0], m), mixed(e.children[1], m), -1);
    case ExprAst::Kind::Negate: {
      Mixed a = mixed(e.children[0], m);
      return a.vector ? Mixed{true, {}, -a.vec} : scalar(-a.scalar);
    }
    case ExprAst::Kind::Product: {
      Mixed a = mixed(e.children[0], m);
      Mixed b = mixed(e.children[1], m);
      if (a.vector && b.vector) throw ParseError("product of two module elements", e.position);
      if (a.vector) return Mixed{true, {}, a.vec.mul(b.scalar)};
      if (b.vector) return Mixed{true, {}, b.vec.mul(a.scalar)};
      return scalar(a.scalar * b.scalar);
    }
    case ExprAst::Kind::Power: {
      Mixed a = mixed(e.children[0], m);
      if (a.vector) throw ParseError("power of a module element", e.position);
      if (e.exponent < 0) throw ParseError("negative power in a polynomial", e.position);
      return scalar(a.scalar.pow(static_cast<unsigned>(e.exponent)));
    }
  }
  throw InternalError("unhandled expression node");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::uint32_t parse_uint(const std::string& text, std::size_t position) {
  const std::string t = trim(text);
  if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a positive integer, got `" + t + "`", position);
  }
  return static_cast<std::uint32_t>(std::stoul(t));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

}  // namespace

ExprAst parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const ExprAst& e) {
  switch (e.kind) {
    case ExprAst::Kind::Number:
      return e.number.get_str();
    case ExprAst::Kind::Variable:
      return to_string(e.var);
    case ExprAst::Kind::Name:
      return e.name;
    case ExprAst::Kind::Sum:
      return "(" + to_string(e.children[0]) + " + " + to_string(e.children[1]) + ")";
    case ExprAst::Kind::Difference:
      return "(" + to_string(e.children[0]) + " - " + to_string(e.children[1]) + ")";
    case ExprAst::Kind::Product:
      return to_string(e.children[0]) + "*" + to_string(e.children[1]);
    case ExprAst::Kind::Negate:
      return "-(" + to_string(e.children[0]) + ")";
    case ExprAst::Kind::Power:
      return "(" + to_string(e.children[0]) + ")^" + std::to_string(e.exponent);
  }
  return "?";
}

DiagRat elaborate(const ExprAst& e, std::uint32_t n) { return elaborate_rat(e, DiagRat::zvars(n)); }

DiagRat elaborate(const ExprAst& e, const std::vector<VarId>& vars) {
  std::vector<VarId> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  return elaborate_rat(e, sorted);
}

MPoly elaborate_poly(const ExprAst& e) {
  Mixed r = mixed(e, nullptr);
  return r.scalar;
}

VPoly elaborate_vpoly(const ExprAst& e, const FreeDModule& m) {
  Mixed r = mixed(e, &m);
  if (!r.vector) {
    if (!r.scalar.is_zero()) throw ParseError("value must be a module element", e.position);
    return VPoly();
  }
  return r.vec;
}

std::uint32_t max_index(const ExprAst& e, VarKind kind) {
  std::uint32_t best = 0;
  if (e.kind == ExprAst::Kind::Variable && e.var.kind == kind) best = e.var.index;
  for (const ExprAst& c : e.children) best = std::max(best, max_index(c, kind));
  return best;
}

DiagRat parse_diag_rat(const std::string& text, std::uint32_t n) { return elaborate(parse_expr(text), n); }
MPoly parse_poly(const std::string& text) { return elaborate_poly(parse_expr(text)); }
VPoly parse_vpoly(const std::string& text, const FreeDModule& m) { return elaborate_vpoly(parse_expr(text), m); }

DiGraph parse_graph(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("expected `n=<int>; edges=...`", 0);
  const std::string head = trim(text.substr(0, semi));
  if (head.rfind("n", 0) != 0 || head.find('=') == std::string::npos) throw ParseError("expected `n=<int>`", 0);
  const std::uint32_t n = parse_uint(head.substr(head.find('=') + 1), 0);
  const std::string tail = trim(text.substr(semi + 1));
  if (tail.rfind("edges", 0) != 0 || tail.find('=') == std::string::npos) {
    throw ParseError("expected `edges=`", semi + 1);
  }
  const std::string list = trim(tail.substr(tail.find('=') + 1));
  std::vector<Edge> edges;
  if (!list.empty()) {
    for (const std::string& item : split(list, ',')) {
      const auto arrow = item.find("->");
      if (arrow == std::string::npos) throw ParseError("expected `i->j`, got `" + trim(item) + "`", semi + 1);
      const std::uint32_t from = parse_uint(item.substr(0, arrow), semi + 1);
      const std::uint32_t to = parse_uint(item.substr(arrow + 2), semi + 1);
      if (from < 1 || from > n || to < 1 || to > n) throw ParseError("edge label outside 1..n", semi + 1);
      if (from == to) throw ParseError("tadpole edge", semi + 1);
      edges.push_back({from, to});
    }
  }
  return DiGraph(n, std::move(edges));
}

std::vector<std::uint32_t> parse_line(const std::string& text) {
  std::vector<std::uint32_t> line;
  for (const std::string& part : split(text, '>')) line.push_back(parse_uint(part, 0));
  return line;
}

LineForest parse_forest(const std::string& text) {
  std::vector<LineForest::Line> lines;
  std::uint32_t n = 0;
  for (const std::string& part : split(text, '|')) {
    lines.push_back(parse_line(part));
    n += static_cast<std::uint32_t>(lines.back().size());
  }
  try {
    return LineForest(n, std::move(lines));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid forest: ") + e.what(), 0);
  }
}

TensorKey parse_tensor_key(const std::string& text, const FreeDModule& m) {
  TensorKey key;
  std::size_t offset = 0;
  for (const std::string& raw : split(text, ',')) {
    std::string item = trim(raw);
    TensorFactor f;
    if (item.size() > 1 && item[0] == 'd' && (item[1] == '^' || item[1] == ' ' || item[1] == '*')) {
      std::size_t i = 1;
      if (item[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < item.size() && std::isdigit(static_cast<unsigned char>(item[j]))) ++j;
        f.dpow = parse_uint(item.substr(i, j - i), offset);
        i = j;
      } else {
        f.dpow = 1;
      }
      while (i < item.size() && (item[i] == ' ' || item[i] == '*')) ++i;
      item = item.substr(i);
    }
    auto g = m.find(item);
    if (!g) throw ParseError("unknown generator `" + item + "`", offset);
    f.gen = *g;
    key.push_back(f);
    offset += raw.size() + 1;
  }
  return key;
}

}  // namespace chiral
