#pragma once

#include <stdexcept>
#include <string>

namespace bvp {

// Parameters of the boundary conditions
//   u(0) = beta * u(eta),   u(T) = alpha * integral of u over [0, eta].
//
// The positivity window is
//   0 < eta < T,   0 < alpha < 2T/eta^2,
//   0 <= beta < (2T - alpha eta^2) / (alpha eta^2 - 2 eta + 2T),
// inside which the denominator
//   -D = (2T - alpha eta^2) - beta (alpha eta^2 - 2 eta + 2T)
// is strictly positive and the solution kernel is nonnegative.
struct BvpParams {
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  double T = 0.0;

  double alpha_sup() const { return 2.0 * T / (eta * eta); }
  double beta_sup() const {
    return (2.0 * T - alpha * eta * eta) / (alpha * eta * eta - 2.0 * eta + 2.0 * T);
  }
  // -D as above; positive inside the window, zero exactly at beta = beta_sup.
  double neg_denominator() const {
    return (2.0 * T - alpha * eta * eta) -
           beta * (alpha * eta * eta - 2.0 * eta + 2.0 * T);
  }

  bool in_positivity_window() const;
  // Throws std::invalid_argument with the violated bound spelled out.
  void require_valid() const;
};

enum class Admissibility {
  kAdmissible,           // inside the positivity window
  kNoPositiveSolution,   // alpha > 2T/eta^2 with beta >= 0: no positive solution exists
  kExcluded,             // boundary or otherwise outside every covered regime
};

// Requires 0 < eta < T (throws std::invalid_argument otherwise).
Admissibility classify_region(double alpha, double beta, double eta, double T);
inline Admissibility classify_region(const BvpParams& p) {
  return classify_region(p.alpha, p.beta, p.eta, p.T);
}

const char* to_string(Admissibility a);

}  // namespace bvp
