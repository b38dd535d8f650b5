#include "bvp/params.hpp"

#include <cmath>
#include <sstream>

namespace bvp {

bool BvpParams::in_positivity_window() const {
  if (!(eta > 0.0 && eta < T)) return false;
  if (!(alpha > 0.0 && alpha < alpha_sup())) return false;
  if (!(beta >= 0.0 && beta < beta_sup())) return false;
  return true;
}

void BvpParams::require_valid() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(eta) ||
      !std::isfinite(T))
    throw std::invalid_argument("params: non-finite value");
  std::ostringstream msg;
  if (!(eta > 0.0 && eta < T)) {
    msg << "params: need 0 < eta < T, got eta=" << eta << " T=" << T;
    throw std::invalid_argument(msg.str());
  }
  if (!(alpha > 0.0 && alpha < alpha_sup())) {
    msg << "params: need 0 < alpha < " << alpha_sup() << " = 2T/eta^2, got alpha=" << alpha;
    throw std::invalid_argument(msg.str());
  }
  if (!(beta >= 0.0 && beta < beta_sup())) {
    msg << "params: need 0 <= beta < " << beta_sup() << ", got beta=" << beta;
    throw std::invalid_argument(msg.str());
  }
}

Admissibility classify_region(double alpha, double beta, double eta, double T) {
  if (!(eta > 0.0 && eta < T))
    throw std::invalid_argument("classify_region: need 0 < eta < T");
  BvpParams p{alpha, beta, eta, T};
  if (p.in_positivity_window()) return Admissibility::kAdmissible;
  if (alpha > p.alpha_sup() && beta >= 0.0)
    return Admissibility::kNoPositiveSolution;
  // alpha == 2T/eta^2 exactly, beta at or past its bound, or a negative
  // parameter: none of the covered regimes applies.
  return Admissibility::kExcluded;
}

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::kAdmissible: return "admissible";
    case Admissibility::kNoPositiveSolution: return "no_positive_solution";
    case Admissibility::kExcluded: return "excluded";
  }
  return "unknown";
}

}  // namespace bvp
