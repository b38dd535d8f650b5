#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvp/cone_constants.hpp"
#include "bvp/expr.hpp"

namespace bvp {

// Relative slack on every certificate inequality; checks this close to the
// boundary are additionally flagged marginal.
inline constexpr double kCriteriaMargin = 1e-9;

enum class LimitClass { kZero, kFinite, kInfinite };

const char* to_string(LimitClass c);

struct DeclaredAsymptotics {
  LimitClass f0_class = LimitClass::kFinite;
  double f0_value = 0.0;  // meaningful for kFinite only
  LimitClass finf_class = LimitClass::kFinite;
  double finf_value = 0.0;
};

struct AsymptoticEstimate {
  LimitClass f0_class = LimitClass::kFinite;
  double f0_value = 0.0;
  LimitClass finf_class = LimitClass::kFinite;
  double finf_value = 0.0;
  bool declared = false;            // taken from the problem file, not sampled
  double window_lo = 0.0, window_hi = 0.0;  // extreme u actually evaluated
};

// Classifies the limits of r(u) = f(u)/u at 0+ and +infinity by sampling r
// on geometric ladders (quarter-decade steps, u from 1e-2 down to 1e-14 and
// from 1e2 up to 1e14, stopping early if f overflows its double range).
// Toward each limit: monotone nonincreasing r with the last sample below
// 1e-6 reads as zero; monotone nondecreasing r with the last sample above
// 1e6 reads as infinite; the last three samples agreeing within 1% read as
// the finite value of the last sample. Anything else throws
// InconclusiveAsymptotics. Declared values short-circuit the sampling.
AsymptoticEstimate estimate_asymptotics(
    const Expr& f, const std::optional<DeclaredAsymptotics>& declared = {});

struct HypothesisWitness {
  std::string name;       // "H1".."H8"
  bool holds = false;
  bool marginal = false;  // within kCriteriaMargin of the boundary
  std::optional<double> rho;
  std::optional<double> m;      // witnessed slope bound M
  std::optional<double> theta;  // witnessed theta for H5..H8
  double extremum = 0.0;        // scanned max (H2) or min (H4) of f
  std::string evidence;
};

// H2: max of f over [0, rho1] <= lambda1 * rho1. The extremum comes from a
// scan_n-point scan refined three times around the argmax; the witness slope
// is M = max(extremum/rho1, tiny) clipped into (0, lambda1].
HypothesisWitness check_H2(const Expr& f, double lambda1, double rho1,
                           int scan_n = 4096);

// H4: min of f over [gamma*rho2, rho2] >= lambda2 * rho2, witness
// M = min(extremum/rho2 ...) clipped into [lambda2, inf).
HypothesisWitness check_H4(const Expr& f, double lambda2, double gamma,
                           double rho2, int scan_n = 4096);

enum class RhoHypothesis { kH2, kH4 };

// Scans 200 log-spaced candidates in [rho_min, rho_max] and returns the
// witness at the smallest passing rho, skipping candidates within relative
// 1e-9 of exclude. Empty when nothing passes.
std::optional<HypothesisWitness> search_rho(
    const Expr& f, RhoHypothesis which, const ConeConstants& constants,
    double rho_min, double rho_max,
    std::optional<double> exclude = std::nullopt, int scan_n = 4096);

// Existence of theta eliminations:
//   some theta1 in (0,1] with f0 < theta1*lambda1  <=>  f0 < lambda1,
//   some theta2 >= 1 with finf > theta2*lambda2/gamma <=> finf > lambda2/gamma.
bool exists_theta1(LimitClass f0_class, double f0_value, double lambda1);
bool exists_theta2(LimitClass finf_class, double finf_value, double lambda2,
                   double gamma);

// Output identity tokens are part of the CLI contract; the criteria they
// name are described in the README catalog.
enum class CertificateId {
  kThm31,    // f0 = finf = infinity plus an H2 witness: two solutions
  kThm32,    // f0 = finf = 0 plus an H4 witness: two solutions
  kThm41,    // H2 and H4 witnesses at distinct rho: one solution between
  kCor42,    // f0 < lambda1 and finf > lambda2/gamma: one solution
  kCor43,    // f0 > lambda2/gamma and finf < lambda1: one solution
  kCor44,    // H2 witness with both limits above lambda2/gamma: two solutions
  kCor45,    // H4 witness with both limits below lambda1: two solutions
  kThm11D1,  // f0 = 0, finf = infinity: one solution
  kThm11D2,  // f0 = infinity, finf = 0: one solution
};

const char* to_string(CertificateId id);

struct Certificate {
  CertificateId id;
  int solution_count = 0;  // guaranteed count (lower bound)
  // Open intervals for the sup norms of the guaranteed solutions;
  // infinity marks an unbounded end.
  std::vector<std::pair<double, double>> norm_localization;
  std::vector<HypothesisWitness> witnesses;
  bool marginal = false;
};

struct CertifyInput {
  Expr f;
  std::optional<DeclaredAsymptotics> declared_asymptotics;
  std::optional<double> rho1;  // use directly instead of searching
  std::optional<double> rho2;
};

struct CertifyResult {
  AsymptoticEstimate asymptotics;
  std::vector<Certificate> certificates;  // catalog order, every one that fires
  std::optional<HypothesisWitness> h2;    // witness used (declared rho or searched)
  std::optional<HypothesisWitness> h4;
};

inline constexpr double kRhoSearchMin = 1e-2;
inline constexpr double kRhoSearchMax = 1e4;

// Evaluates every certificate in the catalog and returns all that fire.
// Searched witnesses use [kRhoSearchMin, kRhoSearchMax]; when both
// hypotheses pass only at the same searched rho, the H4 search reruns with
// that value excluded so the two-sided criterion keeps distinct radii.
CertifyResult certify(const CertifyInput& input, const ConeConstants& constants);

}  // namespace bvp
