// Command-line front end: parsers plus one subcommand per operation.

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "chiral/convolution.hpp"
#include "chiral/errors.hpp"
#include "chiral/fourier.hpp"
#include "chiral/lie.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"
#include "chiral/residue.hpp"
#include "chiral/verify.hpp"

using namespace chiral;

namespace {

int cmd_decompose(const std::string& spec) {
  const DiGraph g = parse_graph(spec);
  std::cout << to_string(decompose_to_lines(g)) << "\n";
  return 0;
}

int cmd_residue(const std::string& expr, const std::string& line_spec, std::uint32_t n) {
  const ExprAst ast = parse_expr(expr);
  const auto line = parse_line(line_spec);
  n = std::max({n, max_index(ast, VarKind::Z), *std::max_element(line.begin(), line.end())});
  for (std::size_t a = 0; a < line.size(); ++a) {
    if (line[a] == 0) throw ParseError("line vertices start at 1", 0);
    for (std::size_t b = a + 1; b < line.size(); ++b) {
      if (line[a] == line[b]) throw ParseError("line repeats vertex " + std::to_string(line[a]), 0);
    }
  }
  DiagRat f = elaborate(ast, n);
  for (std::size_t a = 0; a + 1 < line.size(); ++a) f = residue(f, line[a], line[a + 1]);
  std::cout << to_string(f) << "\n";
  return 0;
}

int cmd_fourier(const std::string& expr, const std::string& forest_spec) {
  const LineForest forest = parse_forest(forest_spec);
  const DiagRat f = elaborate(parse_expr(expr), forest.n());
  std::cout << to_string(fourier(f, forest)) << "\n";
  return 0;
}

int cmd_convolve(const std::string& f_text, const std::string& q_text) {
  const ExprAst f_ast = parse_expr(f_text);
  const MPoly q = parse_poly(q_text);
  std::uint32_t p = max_index(f_ast, VarKind::W);
  for (VarId v : q.variables()) {
    if (v.kind == VarKind::BigLambda) p = std::max(p, v.index);
  }
  const DiagRat F = elaborate(f_ast, DiagRat::wvars(p));
  std::cout << to_string(convolve(F, q)) << "\n";
  return 0;
}

int cmd_verify(const SuiteOptions& options, const std::string& format) {
  std::cerr << "seed: " << options.seed << "\n";
  const SuiteReport report = run_suite(options);
  std::cout << (format == "json" ? to_json(report) + "\n" : to_text(report));
  return report.cases_failed == 0 ? 0 : 1;
}

int cmd_lie_dim(std::uint32_t n) {
  for (std::uint32_t k = 1; k <= n; ++k) {
    std::cout << "n=" << k << "  dim=" << classical_dimension(k);
    const auto words = bracket_words(k);
    if (k <= 3) {
      for (const auto& w : words) std::cout << "  " << to_string(w);
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact chiral and classical operad calculus"};
  app.require_subcommand(1);

  std::string graph;
  auto* decompose = app.add_subcommand("decompose", "Expand a graph in the line-forest basis");
  decompose->add_option("--graph", graph, "graph, e.g. \"n=3; edges=1->2,1->3\"")->required();

  std::string expr, line, forest;
  std::uint32_t residue_n = 0;
  auto* residue_cmd = app.add_subcommand("residue", "Iterated residue along a line");
  residue_cmd->add_option("--expr", expr, "rational function in z1..zn")->required();
  residue_cmd->add_option("--line", line, "line i1>i2>...>ik")->required();
  residue_cmd->add_option("--n", residue_n, "number of variables (default: largest index used)");

  auto* fourier_cmd = app.add_subcommand("fourier", "Gamma-Fourier transform");
  fourier_cmd->add_option("--expr", expr, "rational function in z1..zn")->required();
  fourier_cmd->add_option("--forest", forest, "line forest, e.g. \"1>2 | 3\"")->required();

  std::string f_text, q_text;
  auto* convolve_cmd = app.add_subcommand("convolve", "Convolution F * Q");
  convolve_cmd->add_option("--f", f_text, "rational function in w1..wp")->required();
  convolve_cmd->add_option("--q", q_text, "polynomial in L1..Lp")->required();

  SuiteOptions options;
  std::string format = "text";
  int degree_r = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", options.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", options.n, "largest arity")->capture_default_str();
  verify->add_option("--seed", options.seed, "random seed")->capture_default_str();
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  auto* r_opt = verify->add_option("--r", degree_r, "only this degree (roundtrip, n2-closed-form)");

  std::uint32_t lie_n = 5;
  auto* lie = app.add_subcommand("lie-dim", "dim P^cl(n) for V = F with d = 0");
  lie->add_option("--n", lie_n, "largest arity")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (decompose->parsed()) return cmd_decompose(graph);
    if (residue_cmd->parsed()) return cmd_residue(expr, line, residue_n);
    if (fourier_cmd->parsed()) return cmd_fourier(expr, forest);
    if (convolve_cmd->parsed()) return cmd_convolve(f_text, q_text);
    if (verify->parsed()) {
      if (r_opt->count() > 0) options.degree_r = degree_r;
      return cmd_verify(options, format);
    }
    if (lie->parsed()) return cmd_lie_dim(lie_n);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
