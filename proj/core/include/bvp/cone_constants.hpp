#pragma once

#include <array>

#include "bvp/expr.hpp"
#include "bvp/params.hpp"

namespace bvp {

// Shrink factor of the positive cone: gamma = min of
//   eta/T,
//   alpha (beta+1) eta^2 / (2T),
//   alpha (beta+1) eta (T - eta) / (2T - alpha (beta+1) eta^2),
// strictly inside (0, 1) for parameters in the positivity window.
double cone_gamma(const BvpParams& p);
std::array<double, 3> cone_gamma_branches(const BvpParams& p);

// Sublinear growth threshold:
//   lambda1 = [(2T - alpha eta^2) - beta(alpha eta^2 - 2 eta + 2T)] /
//             { [2(beta+1) + beta eta (alpha eta + 2)/T + alpha beta T]
//               * integral of T (T - s) a(s) over [0, T] }.
// Throws DegenerateProblem if the weighted integral of a vanishes.
double lambda1(const BvpParams& p, const Expr& a);

// Superlinear growth threshold:
//   lambda2 = [(2T - alpha eta^2) - beta(alpha eta^2 - 2 eta + 2T)] /
//             { 2 gamma eta * integral of (T - s) a(s) over [eta, T] }.
double lambda2(const BvpParams& p, const Expr& a, double gamma);

struct ConeConstants {
  double gamma = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double alpha_sup = 0.0;
  double beta_sup = 0.0;
};

ConeConstants compute_cone_constants(const BvpParams& p, const Expr& a);

struct CoefficientCheck {
  bool a_nonneg = false;            // a >= 0 across [0, T]
  bool a_positive_on_tail = false;  // a > 0 somewhere in [eta, T]
  bool f_nonneg = false;            // f >= 0 across (0, u_probe_max]
};

// Sampled sign checks: a on 4096 uniform nodes of [0, T]; f on 4096
// log-spaced plus 4096 linear-spaced points of (0, u_probe_max]. A sampled
// "true" is evidence, not proof.
CoefficientCheck check_coefficients(const Expr& a, const Expr& f,
                                    const BvpParams& p,
                                    double u_probe_max = 1e6);

}  // namespace bvp
