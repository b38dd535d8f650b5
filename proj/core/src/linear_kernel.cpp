#include "bvp/linear_kernel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace bvp {

namespace {

void require_grid_matches_params(const Grid& g, const BvpParams& p) {
  double scale = std::max(1.0, p.T);
  if (std::fabs(g.eta() - p.eta) > 1e-12 * scale ||
      std::fabs(g.t_end() - p.T) > 1e-12 * scale)
    throw std::invalid_argument("grid does not cover [0, T] with a node at eta");
}

}  // namespace

GridFunction solve_linear(const BvpParams& p, const GridFunction& y) {
  p.require_valid();
  require_grid_matches_params(y.grid(), p);
  if (!y.all_finite()) throw std::invalid_argument("solve_linear: non-finite input");

  const Grid& g = y.grid();
  const double eta = p.eta, T = p.T, alpha = p.alpha, beta = p.beta;

  std::vector<double> weighted(static_cast<std::size_t>(g.head.n) + 1);
  for (int i = 0; i <= g.head.n; ++i)
    weighted[static_cast<std::size_t>(i)] = (eta - g.node(i)) * y[i];
  const double i1 = simpson(weighted, g.head);
  for (int i = 0; i <= g.head.n; ++i) {
    double d = eta - g.node(i);
    weighted[static_cast<std::size_t>(i)] = d * d * y[i];
  }
  const double i2 = simpson(weighted, g.head);
  std::vector<double> w3(static_cast<std::size_t>(g.node_count()));
  for (int i = 0; i < g.node_count(); ++i)
    w3[static_cast<std::size_t>(i)] = (T - g.node(i)) * y[i];
  const double i3 = integrate(GridFunction(g, std::move(w3)));

  const double d = (alpha * eta * eta - 2.0 * T) -
                   beta * (2.0 * eta - alpha * eta * eta - 2.0 * T);
  // Identical to -neg_denominator(); require_valid guarantees d < 0.
  if (!(d < 0.0)) throw std::logic_error("solve_linear: degenerate denominator");

  std::vector<double> sy(static_cast<std::size_t>(g.node_count()));
  for (int i = 0; i < g.node_count(); ++i)
    sy[static_cast<std::size_t>(i)] = g.node(i) * y[i];
  const auto P = cumulative_integral(y);
  const auto Q = cumulative_integral(GridFunction(g, std::move(sy)));

  std::vector<double> u(static_cast<std::size_t>(g.node_count()));
  for (int i = 0; i < g.node_count(); ++i) {
    double t = g.node(i);
    double c1 = (beta * (2.0 * T - alpha * eta * eta) -
                 2.0 * beta * (1.0 - alpha * eta) * t) / d;
    double c2 = (alpha * beta * eta - alpha * (beta - 1.0) * t) / d;
    double c3 = (2.0 * (beta - 1.0) * t - 2.0 * beta * eta) / d;
    double volterra = t * P[static_cast<std::size_t>(i)] - Q[static_cast<std::size_t>(i)];
    u[static_cast<std::size_t>(i)] = c1 * i1 + c2 * i2 + c3 * i3 - volterra;
  }
  return GridFunction(g, std::move(u));
}

GridFunction fd_oracle_solve(const BvpParams& p, const GridFunction& y) {
  p.require_valid();
  require_grid_matches_params(y.grid(), p);
  if (!y.all_finite()) throw std::invalid_argument("fd_oracle_solve: non-finite input");

  const Grid& g = y.grid();
  const int N = g.node_count();
  const int k_eta = g.eta_index();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N);

  A(0, 0) = 1.0;
  A(0, k_eta) -= p.beta;

  for (int i = 1; i + 1 < N; ++i) {
    double hl = g.node(i) - g.node(i - 1);
    double hr = g.node(i + 1) - g.node(i);
    A(i, i - 1) = 2.0 / (hl * (hl + hr));
    A(i, i) = -2.0 / (hl * hr);
    A(i, i + 1) = 2.0 / (hr * (hl + hr));
    b(i) = -y[i];
  }

  // u(T) - alpha * trapezoid(u, [0, eta]) = 0
  A(N - 1, N - 1) += 1.0;
  double h1 = g.head.h();
  for (int j = 0; j <= k_eta; ++j) {
    double w = (j == 0 || j == k_eta) ? 0.5 * h1 : h1;
    A(N - 1, j) -= p.alpha * w;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd x = lu.solve(b);
  double resid = (A * x - b).lpNorm<Eigen::Infinity>();
  double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
  if (!(resid <= 1e-8 * scale))
    throw std::runtime_error("fd_oracle_solve: singular or ill-conditioned system");

  std::vector<double> u(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) u[static_cast<std::size_t>(i)] = x(i);
  return GridFunction(g, std::move(u));
}

ConeBoundReport check_cone_bound(const BvpParams& p, const GridFunction& u,
                                 double gamma) {
  p.require_valid();
  require_grid_matches_params(u.grid(), p);
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("check_cone_bound: gamma must lie in (0, 1)");
  ConeBoundReport r;
  r.norm = u.sup_norm();
  r.min_on_tail = u.min_on_tail();
  r.holds = r.min_on_tail >= gamma * r.norm - kPointwiseTol * (1.0 + r.norm);
  return r;
}

}  // namespace bvp
