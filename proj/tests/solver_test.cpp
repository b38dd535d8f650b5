#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "bvp/cone_constants.hpp"
#include "bvp/criteria.hpp"
#include "bvp/expr.hpp"
#include "bvp/hammerstein.hpp"
#include "bvp/solver.hpp"

using bvp::apply_A;
using bvp::BvpParams;
using bvp::Certificate;
using bvp::CertificateId;
using bvp::classify_against_certificates;
using bvp::Expr;
using bvp::GridFunction;
using bvp::OperatorContext;
using bvp::SolveOptions;
using bvp::SolveOutcome;
using bvp::SolveResult;
using bvp::solve_fixed_points;
using bvp::verify_solution;

namespace {

OperatorContext make_ctx(const BvpParams& p, const std::string& a,
                         const std::string& f, int n) {
  return OperatorContext(p, Expr::parse(a, "t"), Expr::parse(f, "u"), n);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("default start ladder shape") {
  auto s = bvp::default_start_scales(1.0);
  REQUIRE(s.size() == 24);
  CHECK(s.front() == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(s.back() == doctest::Approx(1e3).epsilon(1e-12));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);

  auto scaled = bvp::default_start_scales(4.0);
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(scaled[i] == doctest::Approx(4.0 * s[i]).epsilon(1e-12));
}

TEST_CASE("default grid size honors the environment") {
  unsetenv("BVP_DEFAULT_GRID_N");
  CHECK(bvp::default_grid_n() == 1024);
  setenv("BVP_DEFAULT_GRID_N", "128", 1);
  CHECK(bvp::default_grid_n() == 128);
  setenv("BVP_DEFAULT_GRID_N", "127", 1);  // odd: rejected
  CHECK(bvp::default_grid_n() == 1024);
  setenv("BVP_DEFAULT_GRID_N", "2", 1);  // too small: rejected
  CHECK(bvp::default_grid_n() == 1024);
  setenv("BVP_DEFAULT_GRID_N", "abc", 1);
  CHECK(bvp::default_grid_n() == 1024);
  setenv("BVP_DEFAULT_GRID_N", "64x", 1);  // trailing junk: rejected
  CHECK(bvp::default_grid_n() == 1024);
  unsetenv("BVP_DEFAULT_GRID_N");
}

TEST_CASE("single positive solution with a trivial companion") {
  BvpParams p{1.0, 1.0, 0.5, 1.0};
  OperatorContext ctx = make_ctx(p, "6/25*t", "u*(1 + 799/(1+u^2))", 256);
  SolveOptions opts;
  opts.grid_n = 256;
  SolveOutcome out = solve_fixed_points(ctx, opts);

  REQUIRE(out.positive.size() == 1);
  const SolveResult& r = out.positive.front();
  CHECK(r.converged);
  CHECK(r.sup_norm > 7.5);
  CHECK(r.sup_norm < 7.8);
  CHECK(r.fixed_point_residual <= opts.residual_tol);
  CHECK(r.u.min_value() >= 0.0);
  CHECK(r.bc_residual_origin < 1e-6);
  CHECK(r.bc_residual_integral < 1e-6);
  CHECK(out.converged_starts >= 1);
  CHECK(out.best_residual <= opts.residual_tol);

  // f(0) = 0, so the trivial fixed point is reported alongside
  REQUIRE(out.trivial.has_value());
  CHECK(out.trivial->method == "exact");
  CHECK(out.trivial->sup_norm == 0.0);
  CHECK(out.trivial->converged);
  CHECK(out.trivial->fixed_point_residual == 0.0);
}

TEST_CASE("two solutions straddling the contraction radius") {
  BvpParams p{2.0, 1.0 / 30.0, 1.0, 2.0};
  OperatorContext ctx = make_ctx(p, "5/32*(2-t)^3", "u^(1/2)/2 + u^2/32", 256);
  SolveOptions opts;
  opts.grid_n = 256;
  opts.rho_ref = 4.0;
  SolveOutcome out = solve_fixed_points(ctx, opts);

  REQUIRE(out.positive.size() == 2);
  CHECK(out.positive[0].sup_norm < out.positive[1].sup_norm);  // sorted
  CHECK(out.positive[0].sup_norm > 0.02);
  CHECK(out.positive[0].sup_norm < 0.04);
  CHECK(out.positive[1].sup_norm > 200.0);
  CHECK(out.positive[1].sup_norm < 240.0);
  for (const auto& r : out.positive) {
    CHECK(r.converged);
    CHECK(r.fixed_point_residual <= opts.residual_tol);
    CHECK(r.u.min_value() >= -1e-10 * (1.0 + r.sup_norm));
  }
}

TEST_CASE("solutions are stable under mesh refinement") {
  BvpParams p{1.0, 1.0, 0.5, 1.0};
  auto run = [&](int n) {
    OperatorContext ctx = make_ctx(p, "6/25*t", "u*(1 + 799/(1+u^2))", n);
    SolveOptions opts;
    opts.grid_n = n;
    opts.residual_tol = 1e-10;
    return solve_fixed_points(ctx, opts);
  };
  auto coarse = run(256);
  auto fine = run(512);
  REQUIRE(coarse.positive.size() == 1);
  REQUIRE(fine.positive.size() == 1);
  double a = coarse.positive[0].sup_norm;
  double b = fine.positive[0].sup_norm;
  CHECK(std::abs(a - b) / b < 1e-7);
}

TEST_CASE("duplicate starts collapse to one reported solution") {
  BvpParams p{1.0, 1.0, 0.5, 1.0};
  OperatorContext ctx = make_ctx(p, "6/25*t", "u*(1 + 799/(1+u^2))", 128);
  SolveOptions opts;
  opts.grid_n = 128;
  opts.start_scales = {5.0, 5.0001, 8.0, 8.0001, 12.0};
  SolveOutcome out = solve_fixed_points(ctx, opts);
  CHECK(out.positive.size() == 1);
  CHECK(out.converged_starts >= 2);
}

TEST_CASE("verify reports all residual channels") {
  BvpParams p{2.0, 1.0 / 30.0, 1.0, 2.0};
  // constant f: the image of anything is itself a fixed point
  OperatorContext ctx = make_ctx(p, "5/32*(2-t)^3", "1", 256);
  GridFunction w = apply_A(ctx, GridFunction::constant(ctx.grid, 1.0));
  SolveResult rep = verify_solution(ctx, w, 0.5);
  CHECK(rep.sup_norm == doctest::Approx(w.sup_norm()).epsilon(1e-15));
  CHECK(rep.fixed_point_residual == 0.0);
  CHECK(rep.bc_residual_origin < 1e-9);
  CHECK(rep.bc_residual_integral < 1e-9);
  CHECK(rep.ode_residual < 1e-2);  // second-difference truncation only
  CHECK(rep.in_cone);

  // a gamma outside (0,1) means "cone not checked", reported as false
  SolveResult unchecked = verify_solution(ctx, w, 0.0);
  CHECK_FALSE(unchecked.in_cone);

  // perturbing one interior node shows up in every channel
  GridFunction bad = w;
  bad.mutable_values()[w.size() / 2] += 0.05;
  SolveResult worse = verify_solution(ctx, bad, 0.5);
  CHECK(worse.fixed_point_residual > 0.04);
  CHECK(worse.ode_residual > 1.0);
}

TEST_CASE("classification sorts solutions into certificate intervals") {
  Certificate two;
  two.id = CertificateId::kThm31;
  two.solution_count = 2;
  two.norm_localization = {{0.0, 4.0}, {4.0, kInf}};
  Certificate one;
  one.id = CertificateId::kThm41;
  one.solution_count = 1;
  one.norm_localization = {{0.5, 300.0}};

  auto result_with_norm = [](double norm) {
    SolveResult r;
    r.sup_norm = norm;
    return r;
  };

  SUBCASE("both intervals occupied, labels annotated") {
    std::vector<SolveResult> results = {result_with_norm(1.0),
                                        result_with_norm(10.0)};
    auto rep = classify_against_certificates(results, {two, one});
    REQUIRE(rep.buckets.size() == 3);
    CHECK(rep.buckets[0].solutions == std::vector<int>{0});
    CHECK(rep.buckets[1].solutions == std::vector<int>{1});
    CHECK(rep.buckets[2].solutions == std::vector<int>{0, 1});
    CHECK(rep.unmatched.empty());
    CHECK(rep.all_buckets_occupied);
    CHECK(results[0].certificate_bucket.find("Thm3.1") != std::string::npos);
    CHECK(results[1].certificate_bucket.find("Thm3.1") != std::string::npos);
  }

  SUBCASE("interval endpoints are excluded") {
    std::vector<SolveResult> results = {result_with_norm(4.0)};
    auto rep = classify_against_certificates(results, {two});
    CHECK(rep.unmatched == std::vector<int>{0});
    CHECK_FALSE(rep.all_buckets_occupied);
    CHECK(results[0].certificate_bucket.empty());
  }

  SUBCASE("an empty upper bucket is flagged") {
    std::vector<SolveResult> results = {result_with_norm(1.0)};
    auto rep = classify_against_certificates(results, {two});
    CHECK(rep.unmatched.empty());
    CHECK_FALSE(rep.all_buckets_occupied);
  }
}
