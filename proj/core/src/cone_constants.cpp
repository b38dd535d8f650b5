#include "bvp/cone_constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bvp/errors.hpp"
#include "bvp/quadrature.hpp"

namespace bvp {

namespace {

// Adaptive Simpson split at eta so the kernel weight never straddles the
// breakpoint.
double integral_weighted(const Expr& a, double lo, double hi,
                         const std::function<double(double)>& weight) {
  auto f = [&](double s) { return weight(s) * a.eval(s); };
  return integrate_adaptive(f, lo, hi).value;
}

}  // namespace

std::array<double, 3> cone_gamma_branches(const BvpParams& p) {
  p.require_valid();
  const double bp1 = p.beta + 1.0;
  const double denom = 2.0 * p.T - p.alpha * bp1 * p.eta * p.eta;
  // beta < beta_sup < (2T - alpha eta^2)/(alpha eta^2) makes denom positive.
  if (!(denom > 0.0)) throw std::logic_error("cone_gamma: nonpositive branch denominator");
  return {
      p.eta / p.T,
      p.alpha * bp1 * p.eta * p.eta / (2.0 * p.T),
      p.alpha * bp1 * p.eta * (p.T - p.eta) / denom,
  };
}

double cone_gamma(const BvpParams& p) {
  auto b = cone_gamma_branches(p);
  double g = std::min({b[0], b[1], b[2]});
  if (!(g > 0.0 && g < 1.0)) throw std::logic_error("cone_gamma: outside (0, 1)");
  return g;
}

double lambda1(const BvpParams& p, const Expr& a) {
  p.require_valid();
  const double T = p.T, eta = p.eta, alpha = p.alpha, beta = p.beta;
  const double numerator = p.neg_denominator();
  const double bracket = 2.0 * (beta + 1.0) + beta * eta * (alpha * eta + 2.0) / T +
                         alpha * beta * T;
  double integral =
      T * (integral_weighted(a, 0.0, eta, [&](double s) { return T - s; }) +
           integral_weighted(a, eta, T, [&](double s) { return T - s; }));
  if (!(integral > 0.0))
    throw DegenerateProblem("lambda1: integral of T(T - s) a(s) over [0, T] is not positive");
  return numerator / (bracket * integral);
}

double lambda2(const BvpParams& p, const Expr& a, double gamma) {
  p.require_valid();
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("lambda2: gamma must lie in (0, 1)");
  const double numerator = p.neg_denominator();
  double integral =
      integral_weighted(a, p.eta, p.T, [&](double s) { return p.T - s; });
  if (!(integral > 0.0))
    throw DegenerateProblem("lambda2: integral of (T - s) a(s) over [eta, T] is not positive");
  return numerator / (2.0 * gamma * p.eta * integral);
}

ConeConstants compute_cone_constants(const BvpParams& p, const Expr& a) {
  ConeConstants c;
  c.gamma = cone_gamma(p);
  c.lambda1 = lambda1(p, a);
  c.lambda2 = lambda2(p, a, c.gamma);
  c.alpha_sup = p.alpha_sup();
  c.beta_sup = p.beta_sup();
  return c;
}

CoefficientCheck check_coefficients(const Expr& a, const Expr& f,
                                    const BvpParams& p, double u_probe_max) {
  // Sign sampling needs the geometry only, so inadmissible parameter sets
  // can still be inspected.
  if (!(p.T > 0.0 && p.eta > 0.0 && p.eta < p.T))
    throw std::invalid_argument("check_coefficients: need 0 < eta < T");
  if (!(u_probe_max > 0.0))
    throw std::invalid_argument("check_coefficients: u_probe_max must be positive");
  constexpr int kSamples = 4096;

  CoefficientCheck out;
  out.a_nonneg = true;
  out.a_positive_on_tail = false;
  for (int i = 0; i <= kSamples; ++i) {
    double t = p.T * i / kSamples;
    double v = a.eval(t);
    if (v < 0.0) out.a_nonneg = false;
    if (t >= p.eta && v > 0.0) out.a_positive_on_tail = true;
  }

  out.f_nonneg = true;
  const double log_lo = u_probe_max * 1e-12;
  for (int i = 0; i < kSamples; ++i) {
    double u_log = log_lo * std::pow(u_probe_max / log_lo,
                                     static_cast<double>(i) / (kSamples - 1));
    double u_lin = u_probe_max * (i + 1) / static_cast<double>(kSamples);
    if (f.eval(u_log) < 0.0 || f.eval(u_lin) < 0.0) {
      out.f_nonneg = false;
      break;
    }
  }
  return out;
}

}  // namespace bvp
