#include "bvp/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bvp {

void UniformGrid::require_valid() const {
  if (!(t_start < t_end))
    throw std::invalid_argument("grid: t_start must be < t_end");
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("grid: subinterval count must be even and >= 2, got " +
                                std::to_string(n));
}

double simpson(std::span<const double> values, const UniformGrid& grid) {
  grid.require_valid();
  if (values.size() != static_cast<std::size_t>(grid.n) + 1)
    throw std::invalid_argument("simpson: expected " + std::to_string(grid.n + 1) +
                                " values, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("simpson: non-finite sample");

  double odd = 0.0, even = 0.0;
  for (int i = 1; i < grid.n; i += 2) odd += values[i];
  for (int i = 2; i < grid.n; i += 2) even += values[i];
  return grid.h() / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive: need a < b");
  if (!(rel_tol > 0)) throw std::invalid_argument("integrate_adaptive: rel_tol must be positive");

  // Trapezoid sums reuse every previous evaluation when the grid doubles;
  // Richardson halves recover the composite Simpson value exactly:
  //   S_2n = (4 T_2n - T_n) / 3.
  auto trapezoid = [&](int n) {
    double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
  };
  auto refine = [&](double t_prev, int n_prev) {
    // t for 2*n_prev intervals: keep old nodes, add midpoints.
    double h = (b - a) / (2 * n_prev);
    double mids = 0.0;
    for (int i = 0; i < n_prev; ++i) mids += f(a + (2 * i + 1) * h);
    return 0.5 * t_prev + h * mids;
  };

  int n = kAdaptiveStartN;
  double t_half = trapezoid(n / 2);
  double t = refine(t_half, n / 2);
  double s_prev = (4.0 * t - t_half) / 3.0;

  AdaptiveResult out;
  while (n < kAdaptiveMaxN) {
    double t_next = refine(t, n);
    n *= 2;
    double s = (4.0 * t_next - t) / 3.0;
    t = t_next;
    out.value = s;
    out.n = n;
    out.rel_change = std::fabs(s - s_prev) /
                     std::max(std::fabs(s), std::numeric_limits<double>::min());
    s_prev = s;
    if (out.rel_change < rel_tol) {
      out.converged = true;
      return out;
    }
  }
  return out;  // converged stays false; caller decides severity
}

std::vector<double> cumulative_integral(std::span<const double> values, double h) {
  if (values.size() < 2)
    throw std::invalid_argument("cumulative_integral: need at least two values");
  if (!(h > 0)) throw std::invalid_argument("cumulative_integral: h must be positive");

  const std::size_t m = values.size() - 1;  // subintervals
  std::vector<double> out(values.size(), 0.0);
  auto f = [&](std::size_t i) { return values[i]; };

  if (m == 1) {
    out[1] = 0.5 * h * (f(0) + f(1));
    return out;
  }
  if (m == 2) {
    // Integrate the parabola through the three nodes over each subinterval.
    out[1] = h / 12.0 * (5.0 * f(0) + 8.0 * f(1) - f(2));
    out[2] = out[1] + h / 12.0 * (-f(0) + 8.0 * f(1) + 5.0 * f(2));
    return out;
  }

  // Cubic through four neighbouring nodes, integrated over one subinterval:
  // first/last use one-sided stencils, interior ones are centred.
  out[1] = h / 24.0 * (9.0 * f(0) + 19.0 * f(1) - 5.0 * f(2) + f(3));
  for (std::size_t i = 1; i + 2 <= m; ++i)
    out[i + 1] = out[i] + h / 24.0 * (-f(i - 1) + 13.0 * f(i) + 13.0 * f(i + 1) - f(i + 2));
  out[m] = out[m - 1] +
           h / 24.0 * (f(m - 3) - 5.0 * f(m - 2) + 19.0 * f(m - 1) + 9.0 * f(m));
  return out;
}

}  // namespace bvp
