#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bvp/criteria.hpp"
#include "bvp/expr.hpp"
#include "bvp/params.hpp"

namespace bvp {

struct SolverSettings {
  int n = 0;  // filled from default_grid_n() when the file does not pin it
  double residual_tol = 1e-8;
  int max_iterations = 500;
};

// A problem file is line-oriented: `[section]` headers, `key = value` pairs,
// `#` comments, blank lines. Sections and keys:
//
//   [params]       alpha, beta, eta, T     numbers, p/q rationals allowed
//   [functions]    a, f                    double-quoted expressions in t / u
//   [asymptotics]  f0, finf                "zero", "infinite", or a number
//   [hypotheses]   rho1, rho2              positive numbers
//   [solver]       n, residual_tol, max_iterations
//
// [params] and [functions] are required, everything else optional. Unknown
// sections or keys, duplicate keys, malformed numbers and geometry violations
// (T <= 0 or eta outside (0, T)) all raise ParseError with a line reference.
struct ProblemSpec {
  BvpParams params;
  std::string a_source;
  std::string f_source;
  Expr a;
  Expr f;
  std::optional<DeclaredAsymptotics> asymptotics;
  std::optional<double> rho1;
  std::optional<double> rho2;
  SolverSettings solver;

  static ProblemSpec parse_text(std::string_view text);
  static ProblemSpec load_file(const std::string& path);
};

// "p/q" rational or any from_chars double; rejects trailing garbage.
double parse_number_token(std::string_view token, int line);

}  // namespace bvp
