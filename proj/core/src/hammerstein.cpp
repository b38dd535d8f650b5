#include "bvp/hammerstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bvp {

OperatorContext::OperatorContext(const BvpParams& p, Expr a_expr, Expr f_expr,
                                 int grid_n)
    : params(p),
      a(std::move(a_expr)),
      f(std::move(f_expr)),
      grid(Grid::over(p.eta, p.T, grid_n)) {
  params.require_valid();
  a_values.resize(static_cast<std::size_t>(grid.node_count()));
  for (int i = 0; i < grid.node_count(); ++i)
    a_values[static_cast<std::size_t>(i)] = a.eval(grid.node(i));
}

GridFunction apply_A(const OperatorContext& ctx, const GridFunction& u,
                     ApplyStats* stats) {
  if (!u.grid().matches(ctx.grid))
    throw std::invalid_argument("apply_A: iterate lives on a different grid");
  int clamped = 0;
  std::vector<double> w(static_cast<std::size_t>(ctx.grid.node_count()));
  for (int i = 0; i < ctx.grid.node_count(); ++i) {
    double ui = u[i];
    if (ui < 0.0) {
      ui = 0.0;
      ++clamped;
    }
    w[static_cast<std::size_t>(i)] = ctx.a_values[static_cast<std::size_t>(i)] * ctx.f.eval(ui);
  }
  if (stats) stats->clamped_nodes = clamped;
  return solve_linear(ctx.params, GridFunction(ctx.grid, std::move(w)));
}

double fixed_point_residual(const OperatorContext& ctx, const GridFunction& u) {
  GridFunction au = apply_A(ctx, u);
  double r = 0.0;
  for (int i = 0; i < u.size(); ++i) r = std::max(r, std::fabs(au[i] - u[i]));
  return r;
}

ConeMappingReport check_cone_mapping(const OperatorContext& ctx, double gamma,
                                     int sample_count, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("check_cone_mapping: gamma must lie in (0, 1)");
  if (sample_count <= 0)
    throw std::invalid_argument("check_cone_mapping: sample_count must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double T = ctx.params.T;

  ConeMappingReport report;
  report.samples = sample_count;
  report.worst_nonneg_margin = std::numeric_limits<double>::infinity();
  report.worst_cone_margin = std::numeric_limits<double>::infinity();

  for (int s = 0; s < sample_count; ++s) {
    // Smooth nonnegative shape: a squared low-order wave, spread over
    // several magnitudes so both tiny and large cone elements are hit.
    double c0 = unit(rng), c1 = 2.0 * unit(rng) - 1.0, c2 = 2.0 * unit(rng) - 1.0;
    double phase = 6.283185307179586 * unit(rng);
    double scale = std::pow(10.0, 4.0 * unit(rng) - 2.0);
    GridFunction v = GridFunction::sample(ctx.grid, [&](double t) {
      double x = t / T;
      double w = c0 + c1 * std::sin(3.0 * x + phase) + c2 * x * x;
      return scale * w * w;
    });

    // Shift into the cone: with c = (gamma*norm - min_tail)/(1 - gamma) the
    // shifted sample satisfies min_tail >= gamma * norm exactly.
    double norm = v.sup_norm();
    double min_tail = v.min_on_tail();
    if (norm == 0.0) continue;
    if (min_tail < gamma * norm) {
      double c = (gamma * norm - min_tail) / (1.0 - gamma);
      for (int i = 0; i < v.size(); ++i) v[i] += c;
    }
    ConeBoundReport in = check_cone_bound(ctx.params, v, gamma);
    if (!in.holds) throw std::logic_error("check_cone_mapping: sample escaped the cone");

    GridFunction au = apply_A(ctx, v);
    double au_norm = au.sup_norm();
    double tol = kPointwiseTol * (1.0 + au_norm);
    double nonneg_margin = au.min_value();
    double cone_margin = au.min_on_tail() - gamma * au_norm;
    report.worst_nonneg_margin = std::min(report.worst_nonneg_margin, nonneg_margin);
    report.worst_cone_margin = std::min(report.worst_cone_margin, cone_margin);
    if (nonneg_margin < -tol || cone_margin < -tol) ++report.failures;
  }
  report.all_pass = report.failures == 0;
  return report;
}

}  // namespace bvp
