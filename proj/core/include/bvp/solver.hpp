#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvp/criteria.hpp"
#include "bvp/hammerstein.hpp"

namespace bvp {

struct SolveOptions {
  int grid_n = 1024;
  double residual_tol = 1e-8;       // sup-norm of A(u) - u
  int max_iterations = 500;          // per start, per phase
  std::vector<double> start_scales;  // empty: default_start_scales(rho_ref)
  double dedup_distance = 1e-4;      // relative sup distance between solutions
  double rho_ref = 1.0;              // scale anchor for the default starts
};

// 24 log-spaced constants spanning [1e-6, 1e3] * rho_ref.
std::vector<double> default_start_scales(double rho_ref);

// Grid resolution used when a problem file does not pin one. Reads
// BVP_DEFAULT_GRID_N (even integer >= 4); falls back to 1024.
int default_grid_n();

struct SolveResult {
  GridFunction u;
  double sup_norm = 0.0;
  double fixed_point_residual = 0.0;  // sup |A(u) - u|
  double ode_residual = 0.0;          // sup over interior nodes of |u'' + a f(u)|
  double bc_residual_origin = 0.0;    // |u(0) - beta u(eta)|
  double bc_residual_integral = 0.0;  // |u(T) - alpha int_0^eta u|
  bool in_cone = false;               // min over [eta,T] >= gamma * sup_norm (tolerated)
  bool converged = false;
  std::string method;                 // "picard", "newton", or "exact"
  int start_index = -1;               // ladder index; -1 means separatrix hunt
  std::string certificate_bucket;     // filled by classify_against_certificates
};

struct SolveOutcome {
  std::vector<SolveResult> positive;   // distinct, sorted by sup_norm
  std::optional<SolveResult> trivial;  // u == 0, reported when f(0) = 0
  double best_residual = 0.0;          // best residual seen over all starts
  int converged_starts = 0;
};

// Runs the start ladder through damped Picard iteration with a Newton
// fallback, deduplicates, and verifies every surviving candidate.
SolveOutcome solve_fixed_points(const OperatorContext& ctx,
                                const SolveOptions& opts);

// Independent quality report for a candidate solution: fixed-point,
// differential and boundary residuals plus the cone membership flag.
SolveResult verify_solution(const OperatorContext& ctx, const GridFunction& u,
                            double gamma);

struct CertificateBucket {
  CertificateId certificate;
  std::pair<double, double> interval;  // predicted norm range, 0 = open below,
                                       // +inf = open above
  std::vector<int> solutions;          // indices into the classified list
};

struct ClassificationReport {
  std::vector<CertificateBucket> buckets;
  std::vector<int> unmatched;       // solutions landing in no bucket
  bool all_buckets_occupied = true;
};

// Matches computed solutions against the norm intervals promised by fired
// certificates and annotates each result with the buckets it falls in.
ClassificationReport classify_against_certificates(
    std::vector<SolveResult>& results, const std::vector<Certificate>& certs);

}  // namespace bvp
