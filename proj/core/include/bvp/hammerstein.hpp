#pragma once

#include <cstdint>

#include "bvp/expr.hpp"
#include "bvp/grid_function.hpp"
#include "bvp/linear_kernel.hpp"
#include "bvp/params.hpp"

namespace bvp {

// Everything needed to apply A u = solve_linear(params, a * f(u)): validated
// parameters, the two coefficient expressions, the shared grid, and a(t)
// pre-sampled on it.
struct OperatorContext {
  BvpParams params;
  Expr a;
  Expr f;
  Grid grid;
  std::vector<double> a_values;

  OperatorContext(const BvpParams& p, Expr a_expr, Expr f_expr, int grid_n);
};

struct ApplyStats {
  int clamped_nodes = 0;  // nodes where u < 0 was clamped before f
};

// One application of the integral operator. Negative u samples are clamped
// to 0 before f is evaluated (transient iterates may undershoot); the count
// lands in stats when given. By construction this equals
// solve_linear(params, w) for w = a * f(max(u, 0)).
GridFunction apply_A(const OperatorContext& ctx, const GridFunction& u,
                     ApplyStats* stats = nullptr);

// sup_norm(A u - u)
double fixed_point_residual(const OperatorContext& ctx, const GridFunction& u);

struct ConeMappingReport {
  int samples = 0;
  int failures = 0;
  bool all_pass = false;
  // Most negative slack observed; nonnegative slack means the check held
  // with room to spare.
  double worst_nonneg_margin = 0.0;  // min over samples of min_i (A u)_i
  double worst_cone_margin = 0.0;    // min over samples of min_tail - gamma*norm
};

// Draws sample_count deterministic pseudo-random cone elements (smooth
// nonnegative shapes shifted until min over [eta, T] >= gamma * sup norm),
// applies A, and verifies the image stays in the cone within kPointwiseTol
// slack.
ConeMappingReport check_cone_mapping(const OperatorContext& ctx, double gamma,
                                     int sample_count, std::uint64_t seed = 20240901);

}  // namespace bvp
