#include "bvp/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "bvp/errors.hpp"
#include "bvp/linear_kernel.hpp"
#include "bvp/text_format.hpp"

namespace bvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTrivialNorm = 1e-10;
constexpr double kDivergenceCap = 1e12;
constexpr double kOmegaFloor = 1.0 / 64.0;
constexpr double kStagnationRatio = 0.99;
constexpr int kStagnationWindow = 10;
constexpr int kNewtonMaxHalvings = 6;
constexpr int kPolishIterations = 8;

enum class PhaseStatus { kConverged, kDiverged, kStagnated, kExhausted };

struct PhaseResult {
  PhaseStatus status = PhaseStatus::kExhausted;
  GridFunction u;        // converged iterate, or the best one observed
  double residual = kInf;
  int iterations = 0;
};

// Residual of the iterate, or +inf when the image is not usable.
double safe_residual(const OperatorContext& ctx, const GridFunction& u,
                     GridFunction* image) {
  try {
    GridFunction au = apply_A(ctx, u);
    if (!au.all_finite()) return kInf;
    double r = 0.0;
    for (int i = 0; i < ctx.grid.node_count(); ++i)
      r = std::max(r, std::abs(au[i] - u[i]));
    if (!std::isfinite(r)) return kInf;
    if (image) *image = std::move(au);
    return r;
  } catch (const EvalError&) {
    return kInf;
  }
}

PhaseResult run_picard(const OperatorContext& ctx, const SolveOptions& opts,
                       double start_scale) {
  PhaseResult out;
  GridFunction u = GridFunction::constant(ctx.grid, start_scale);
  double omega = 1.0;
  double prev_r = kInf;
  int stagnant = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    GridFunction au;
    double r = safe_residual(ctx, u, &au);
    out.iterations = it + 1;
    if (r < out.residual) {
      out.residual = r;
      out.u = u;
    }
    if (r == kInf || u.sup_norm() > kDivergenceCap) {
      out.status = PhaseStatus::kDiverged;
      return out;
    }
    if (r <= opts.residual_tol) {
      out.status = PhaseStatus::kConverged;
      out.u = u;
      out.residual = r;
      return out;
    }
    if (r > prev_r) omega = std::max(omega / 2.0, kOmegaFloor);
    stagnant = (r > kStagnationRatio * prev_r) ? stagnant + 1 : 0;
    if (stagnant >= kStagnationWindow) {
      out.status = PhaseStatus::kStagnated;
      return out;
    }
    auto& v = u.mutable_values();
    for (int i = 0; i < ctx.grid.node_count(); ++i)
      v[static_cast<size_t>(i)] = (1.0 - omega) * v[static_cast<size_t>(i)] +
                                  omega * au[i];
    prev_r = r;
  }
  out.status = PhaseStatus::kExhausted;
  return out;
}

// The discrete operator is affine in the load samples w = a f(u), so its
// exact Jacobian with respect to u is L diag(a f'(u)), where column j of L
// is the linear solve driven by the j-th unit load. L depends only on the
// context and is shared across all Newton runs.
class NewtonWorkspace {
 public:
  explicit NewtonWorkspace(const OperatorContext& ctx) : ctx_(ctx) {}

  const Eigen::MatrixXd& linear_response() {
    if (built_) return response_;
    const int n = ctx_.grid.node_count();
    response_.resize(n, n);
    std::vector<double> unit(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      unit[static_cast<size_t>(j)] = 1.0;
      GridFunction w(ctx_.grid, unit);
      GridFunction col = solve_linear(ctx_.params, w);
      for (int i = 0; i < n; ++i) response_(i, j) = col[i];
      unit[static_cast<size_t>(j)] = 0.0;
    }
    built_ = true;
    return response_;
  }

 private:
  const OperatorContext& ctx_;
  Eigen::MatrixXd response_;
  bool built_ = false;
};

// a(t_j) f'(max(u_j, 0)) by forward difference; the clamp keeps the probe
// inside the domain of f for one-sided nonlinearities like sqrt.
Eigen::VectorXd load_slope(const OperatorContext& ctx, const GridFunction& u) {
  const int n = ctx.grid.node_count();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) {
    double base = std::max(u[i], 0.0);
    double step = 1e-7 * (1.0 + std::abs(base));
    double hi, lo;
    try {
      hi = ctx.f.eval(base + step);
      lo = ctx.f.eval(base);
    } catch (const EvalError&) {
      d(i) = 0.0;
      continue;
    }
    double slope = (hi - lo) / step;
    d(i) = std::isfinite(slope) ? ctx.a_values[i] * slope : 0.0;
  }
  return d;
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_jacobian(
    const OperatorContext& ctx, NewtonWorkspace& ws, const GridFunction& u) {
  const int n = ctx.grid.node_count();
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
  j.noalias() -= ws.linear_response() * load_slope(ctx, u).asDiagonal();
  return Eigen::PartialPivLU<Eigen::MatrixXd>(j);
}

// Damped chord Newton on F(u) = u - A(u). The factorization is reused while
// it keeps making progress and refreshed when a step fails or stalls.
PhaseResult run_newton(const OperatorContext& ctx, NewtonWorkspace& ws,
                       GridFunction u, int max_iterations,
                       double residual_tol) {
  PhaseResult out;
  const int n = ctx.grid.node_count();
  GridFunction au;
  double fn = safe_residual(ctx, u, &au);
  if (fn == kInf) {
    out.status = PhaseStatus::kDiverged;
    out.u = std::move(u);
    return out;
  }
  out.u = u;
  out.residual = fn;

  auto lu = factor_jacobian(ctx, ws, u);
  double fn_at_factor = fn;
  bool fresh = true;

  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    if (fn <= residual_tol) {
      out.status = PhaseStatus::kConverged;
      out.u = u;
      out.residual = fn;
      return out;
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = au[i] - u[i];  // -F
    Eigen::VectorXd step = lu.solve(rhs);
    bool accepted = false;
    GridFunction cand = u;
    GridFunction cand_image;
    double fc = kInf;
    if (step.allFinite()) {
      double t = 1.0;
      for (int h = 0; h <= kNewtonMaxHalvings; ++h, t /= 2.0) {
        auto& v = cand.mutable_values();
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = u[i] + t * step(i);
        fc = safe_residual(ctx, cand, &cand_image);
        if (fc < fn) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      if (fresh) {
        out.status = PhaseStatus::kStagnated;
        return out;
      }
      lu = factor_jacobian(ctx, ws, u);
      fn_at_factor = fn;
      fresh = true;
      continue;
    }
    u = std::move(cand);
    au = std::move(cand_image);
    fn = fc;
    fresh = false;
    if (fn < out.residual) {
      out.residual = fn;
      out.u = u;
    }
    if (u.sup_norm() > kDivergenceCap) {
      out.status = PhaseStatus::kDiverged;
      return out;
    }
    if (fn > 0.3 * fn_at_factor) {
      lu = factor_jacobian(ctx, ws, u);
      fn_at_factor = fn;
      fresh = true;
    }
  }
  out.status = PhaseStatus::kExhausted;
  return out;
}

// Drives an already-converged candidate a few chord steps further so that
// near-fixed-points of slowly contracting iterations collapse to the actual
// fixed point (in particular, decaying iterates collapse onto u == 0 and get
// filtered as trivial instead of surviving as spurious small solutions).
GridFunction polish(const OperatorContext& ctx, NewtonWorkspace& ws,
                    const GridFunction& u) {
  double target = std::max(1e-13 * (1.0 + u.sup_norm()), 100 * DBL_MIN);
  PhaseResult r = run_newton(ctx, ws, u, kPolishIterations, target);
  if (r.residual == kInf) return u;
  // Keep the polished iterate only if it stayed in the same neighborhood.
  double drift = 0.0;
  for (int i = 0; i < ctx.grid.node_count(); ++i)
    drift = std::max(drift, std::abs(r.u[i] - u[i]));
  if (drift > 1e-2 * (1.0 + u.sup_norm())) return u;
  return r.u;
}

bool same_solution(const GridFunction& a, const GridFunction& b,
                   double rel_tol) {
  double dist = 0.0;
  double scale = std::max({a.sup_norm(), b.sup_norm(), 1e-30});
  for (int i = 0; i < a.grid().node_count(); ++i)
    dist = std::max(dist, std::abs(a[i] - b[i]));
  return dist <= rel_tol * scale;
}

// How a Picard run from one start constant ended, for basin bookkeeping.
enum class StartFate { kTrivial, kPositive, kDiverged, kStuck };

struct HuntRun {
  int cls = 0;  // -1 fell to the trivial basin, +1 escaped upward, 0 neither
  GridFunction best_u;
  double best_r = kInf;
};

// Raw (undamped) Picard from a constant start, classified by which basin the
// trajectory enters. The best-residual iterate is kept: near the separatrix
// it hugs the unstable fixed point.
HuntRun hunt_picard(const OperatorContext& ctx, const SolveOptions& opts,
                    double c, double low_bar, double high_bar) {
  HuntRun out;
  GridFunction u = GridFunction::constant(ctx.grid, c);
  for (int it = 0; it < opts.max_iterations; ++it) {
    GridFunction au;
    double r = safe_residual(ctx, u, &au);
    if (r == kInf) {
      out.cls = 1;
      return out;
    }
    if (r < out.best_r) {
      out.best_r = r;
      out.best_u = u;
    }
    if (r <= opts.residual_tol) {
      out.cls = u.sup_norm() < kTrivialNorm ? -1 : 1;
      return out;
    }
    u = std::move(au);
    double norm = u.sup_norm();
    if (norm < low_bar) {
      out.cls = -1;
      return out;
    }
    if (norm > high_bar) {
      out.cls = 1;
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<double> default_start_scales(double rho_ref) {
  if (!(rho_ref > 0.0) || !std::isfinite(rho_ref)) rho_ref = 1.0;
  constexpr int kCount = 24;
  std::vector<double> scales(kCount);
  for (int i = 0; i < kCount; ++i) {
    double x = -6.0 + 9.0 * i / (kCount - 1);  // exponents in [-6, 3]
    scales[static_cast<size_t>(i)] = rho_ref * std::pow(10.0, x);
  }
  return scales;
}

int default_grid_n() {
  const char* env = std::getenv("BVP_DEFAULT_GRID_N");
  if (env != nullptr) {
    int n = 0;
    auto [p, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc() && *p == '\0' && n >= 4 && n % 2 == 0) return n;
  }
  return 1024;
}

SolveResult verify_solution(const OperatorContext& ctx, const GridFunction& u,
                            double gamma) {
  SolveResult r;
  r.u = u;
  r.sup_norm = u.sup_norm();
  r.fixed_point_residual = fixed_point_residual(ctx, u);

  const Grid& g = ctx.grid;
  const int n = g.node_count();
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    double hl = g.node(i) - g.node(i - 1);
    double hr = g.node(i + 1) - g.node(i);
    double d2 = 2.0 * (hl * u[i + 1] - (hl + hr) * u[i] + hr * u[i - 1]) /
                (hl * hr * (hl + hr));
    double w = ctx.a_values[i] * ctx.f.eval(std::max(u[i], 0.0));
    worst = std::max(worst, std::abs(d2 + w));
  }
  r.ode_residual = worst;
  r.bc_residual_origin = std::abs(u[0] - ctx.params.beta * u[g.eta_index()]);
  r.bc_residual_integral =
      std::abs(u[n - 1] - ctx.params.alpha * integrate_head(u));
  // gamma outside (0, 1) means "not checked here"; callers holding the real
  // cone constant re-run the bound themselves.
  r.in_cone = gamma > 0.0 && gamma < 1.0 &&
              check_cone_bound(ctx.params, u, gamma).holds;
  return r;
}

SolveOutcome solve_fixed_points(const OperatorContext& ctx,
                                const SolveOptions& opts) {
  SolveOutcome out;
  out.best_residual = kInf;
  std::vector<double> scales = opts.start_scales;
  if (scales.empty()) scales = default_start_scales(opts.rho_ref);

  NewtonWorkspace ws(ctx);

  struct Candidate {
    GridFunction u;
    double residual;
    std::string method;
    int start_index;
  };
  std::vector<Candidate> candidates;
  std::vector<StartFate> fates(scales.size(), StartFate::kStuck);

  for (int idx = 0; idx < static_cast<int>(scales.size()); ++idx) {
    double scale = scales[static_cast<size_t>(idx)];
    if (!(scale > 0.0) || !std::isfinite(scale)) continue;
    PhaseResult pic = run_picard(ctx, opts, scale);
    if (pic.residual < out.best_residual) out.best_residual = pic.residual;

    bool picard_done = pic.status == PhaseStatus::kConverged;
    bool trivial_landing = picard_done && pic.u.sup_norm() < kTrivialNorm;
    if (picard_done)
      fates[static_cast<size_t>(idx)] =
          trivial_landing ? StartFate::kTrivial : StartFate::kPositive;
    else if (pic.status == PhaseStatus::kDiverged)
      fates[static_cast<size_t>(idx)] = StartFate::kDiverged;

    if (picard_done) {
      ++out.converged_starts;
      candidates.push_back({pic.u, pic.residual, "picard", idx});
    }

    // Newton fallback: every start that Picard did not land, plus converged
    // starts that fell into the trivial solution (an unstable positive fixed
    // point below the start would otherwise be missed).
    if (!picard_done || trivial_landing) {
      GridFunction init =
          (pic.status == PhaseStatus::kDiverged || trivial_landing)
              ? GridFunction::constant(ctx.grid, scale)
              : pic.u;
      PhaseResult nw =
          run_newton(ctx, ws, init, opts.max_iterations, opts.residual_tol);
      if (nw.residual < out.best_residual) out.best_residual = nw.residual;
      if (nw.status == PhaseStatus::kConverged) {
        if (!picard_done) ++out.converged_starts;
        candidates.push_back({nw.u, nw.residual, "newton", idx});
      }
    }
  }

  // Separatrix hunt. A ladder step whose lower end fell to u = 0 while the
  // upper end escaped brackets the stable manifold of an unstable positive
  // fixed point. Bisect the start constant toward that manifold; Picard
  // trajectories launched there linger near the fixed point, and Newton from
  // the best lingering iterate lands on it.
  int hunts = 0;
  for (size_t k = 0; k + 1 < scales.size() && hunts < 2; ++k) {
    bool lower_trivial = fates[k] == StartFate::kTrivial;
    bool upper_escapes = fates[k + 1] == StartFate::kPositive ||
                         fates[k + 1] == StartFate::kDiverged ||
                         fates[k + 1] == StartFate::kStuck;
    if (!lower_trivial || !upper_escapes) continue;
    ++hunts;
    double lo = scales[k];
    double hi = scales[k + 1];
    double low_bar = std::max(kTrivialNorm, 1e-4 * lo);
    double high_bar = 1e3 * hi;
    GridFunction best_u;
    double best_r = kInf;
    for (int it = 0; it < 40 && hi > lo * (1.0 + 1e-12); ++it) {
      double c = std::sqrt(lo * hi);
      HuntRun run = hunt_picard(ctx, opts, c, low_bar, high_bar);
      if (run.best_r < best_r) {
        best_r = run.best_r;
        best_u = run.best_u;
      }
      if (run.cls < 0)
        lo = c;
      else if (run.cls > 0)
        hi = c;
      else
        break;  // lingering run: the best iterate is already near the target
    }
    if (best_r < kInf) {
      PhaseResult nw =
          run_newton(ctx, ws, best_u, opts.max_iterations, opts.residual_tol);
      if (nw.residual < out.best_residual) out.best_residual = nw.residual;
      if (nw.status == PhaseStatus::kConverged &&
          nw.u.sup_norm() >= kTrivialNorm)
        candidates.push_back({nw.u, nw.residual, "newton", -1});
    }
  }

  // u == 0 solves the problem exactly whenever f(0) = 0; report it without
  // iterating. Candidates that collapse onto it are dropped below.
  bool f_zero_at_origin = false;
  try {
    f_zero_at_origin = ctx.f.eval(0.0) == 0.0;
  } catch (const EvalError&) {
    f_zero_at_origin = false;
  }
  if (f_zero_at_origin) {
    GridFunction zero = GridFunction::constant(ctx.grid, 0.0);
    SolveResult t = verify_solution(ctx, zero, 0.0);
    t.in_cone = true;
    t.converged = true;
    t.method = "exact";
    out.trivial = std::move(t);
  }

  // Polish, then drop trivial collapses and deduplicate.
  std::vector<Candidate> kept;
  for (auto& c : candidates) {
    c.u = polish(ctx, ws, c.u);
    double norm = c.u.sup_norm();
    if (norm < kTrivialNorm) continue;
    if (c.u.min_value() < -kPointwiseTol * (1.0 + norm)) continue;
    bool duplicate = false;
    for (const auto& k : kept)
      if (same_solution(c.u, k.u, opts.dedup_distance)) {
        duplicate = true;
        break;
      }
    if (!duplicate) kept.push_back(std::move(c));
  }

  for (const auto& c : kept) {
    SolveResult r = verify_solution(ctx, c.u, 0.0);
    r.in_cone = false;  // caller re-checks with the actual cone constant
    r.converged = r.fixed_point_residual <= opts.residual_tol;
    r.method = c.method;
    r.start_index = c.start_index;
    out.positive.push_back(std::move(r));
  }
  std::sort(out.positive.begin(), out.positive.end(),
            [](const SolveResult& a, const SolveResult& b) {
              return a.sup_norm < b.sup_norm;
            });
  return out;
}

ClassificationReport classify_against_certificates(
    std::vector<SolveResult>& results, const std::vector<Certificate>& certs) {
  ClassificationReport report;
  for (const auto& cert : certs) {
    for (const auto& iv : cert.norm_localization) {
      CertificateBucket bucket;
      bucket.certificate = cert.id;
      bucket.interval = iv;
      for (int i = 0; i < static_cast<int>(results.size()); ++i) {
        double norm = results[static_cast<size_t>(i)].sup_norm;
        if (norm > iv.first && norm < iv.second)
          bucket.solutions.push_back(i);
      }
      if (bucket.solutions.empty()) report.all_buckets_occupied = false;
      report.buckets.push_back(std::move(bucket));
    }
  }
  for (int i = 0; i < static_cast<int>(results.size()); ++i) {
    std::string labels;
    for (const auto& bucket : report.buckets) {
      if (std::find(bucket.solutions.begin(), bucket.solutions.end(), i) ==
          bucket.solutions.end())
        continue;
      if (!labels.empty()) labels += ";";
      labels += std::string(to_string(bucket.certificate)) + "(" +
                fmt_g12(bucket.interval.first) + "," +
                fmt_g12(bucket.interval.second) + ")";
    }
    if (labels.empty()) report.unmatched.push_back(i);
    results[static_cast<size_t>(i)].certificate_bucket = std::move(labels);
  }
  return report;
}

}  // namespace bvp
