#pragma once

#include "bvp/grid_function.hpp"
#include "bvp/params.hpp"

namespace bvp {

// Absolute slack granted on nonnegativity and cone checks, scaled by the
// iterate: tol = kPointwiseTol * (1 + sup_norm).
inline constexpr double kPointwiseTol = 1e-10;

// Solves u'' + y = 0 with u(0) = beta u(eta), u(T) = alpha * integral of u
// over [0, eta], for y sampled on its grid. Closed form:
//
//   u(t) = [beta(2T - alpha eta^2) - 2 beta(1 - alpha eta) t]/D * I1
//        + [alpha beta eta - alpha(beta - 1) t]/D * I2
//        + [2(beta - 1) t - 2 beta eta]/D * I3
//        - integral of (t - s) y(s) over [0, t]
//
//   I1 = integral (eta - s)   y over [0, eta]
//   I2 = integral (eta - s)^2 y over [0, eta]
//   I3 = integral (T - s)     y over [0, T]
//   D  = (alpha eta^2 - 2T) - beta(2 eta - alpha eta^2 - 2T)   (< 0 in window)
//
// The fixed integrals use Simpson on the shared grid; the running Volterra
// term uses the fourth-order cumulative rule via two accumulators,
//   integral (t - s) y over [0, t] = t * P(t) - Q(t),
// P = running integral of y, Q = running integral of s y(s). Requires params
// inside the positivity window and y finite; throws otherwise.
GridFunction solve_linear(const BvpParams& p, const GridFunction& y);

// Independent second-order oracle for the same problem: central differences
// on y's grid (one-sided spacings at the segment joint), the first boundary
// row is u_0 - beta u_{k(eta)} = 0 and the last row imposes
// u_N = alpha * trapezoid of u over [0, eta]. Dense LU solve. Agrees with
// solve_linear to O(h^2); the sup-difference shrinks ~4x when n doubles.
GridFunction fd_oracle_solve(const BvpParams& p, const GridFunction& y);

struct ConeBoundReport {
  double min_on_tail = 0.0;
  double norm = 0.0;
  bool holds = false;
};

// Checks min over [eta, T] of u >= gamma * sup_norm(u), with kPointwiseTol
// slack on the comparison.
ConeBoundReport check_cone_bound(const BvpParams& p, const GridFunction& u,
                                 double gamma);

}  // namespace bvp
