#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bvp {

inline constexpr double kDefaultQuadRelTol = 1e-10;
inline constexpr int kAdaptiveStartN = 16;
inline constexpr int kAdaptiveMaxN = 1 << 20;

// Evenly spaced nodes t_i = t_start + i*h, i = 0..n. n must be even and >= 2
// for Simpson weights to apply.
struct UniformGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n = 2;

  double h() const { return (t_end - t_start) / n; }
  double node(int i) const { return i == n ? t_end : t_start + i * h(); }
  void require_valid() const;
};

// Composite Simpson rule over sampled values (size n+1). Exact for cubics up
// to rounding. Throws std::invalid_argument on a size mismatch or non-finite
// input.
double simpson(std::span<const double> values, const UniformGrid& grid);

struct AdaptiveResult {
  double value = 0.0;
  double rel_change = 0.0;  // |last - previous| / max(|last|, tiny)
  int n = 0;                // subintervals of the final estimate
  bool converged = false;
};

// Simpson with grid doubling (n = 16, 32, ...) until two successive
// estimates agree to rel_tol or n reaches 2^20. A missed tolerance is
// reported in the result, not thrown; evaluation errors propagate.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  double rel_tol = kDefaultQuadRelTol);

// Running integral out[i] = integral of values over [t_0, t_i] on a uniform
// spacing h, computed by integrating the local cubic interpolant of each
// subinterval (quadratic when only three nodes exist, trapezoid when two).
// One O(n) pass, globally fourth order for smooth data.
std::vector<double> cumulative_integral(std::span<const double> values, double h);

}  // namespace bvp
