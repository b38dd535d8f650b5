#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "bvp/cone_constants.hpp"
#include "bvp/errors.hpp"
#include "bvp/expr.hpp"
#include "bvp/params.hpp"

using bvp::BvpParams;
using bvp::compute_cone_constants;
using bvp::cone_gamma;
using bvp::cone_gamma_branches;
using bvp::DegenerateProblem;
using bvp::Expr;

namespace {
Expr a_of(const std::string& s) { return Expr::parse(s, "t"); }
}  // namespace

// All closed-form reference values below were derived by hand from the
// gamma / lambda formulas and checked symbolically before being frozen here.

TEST_CASE("worked set 1: alpha=2, beta=1/30, eta=1, T=2, a=5/32 (2-t)^3") {
  BvpParams p{2.0, 1.0 / 30.0, 1.0, 2.0};
  auto br = cone_gamma_branches(p);
  CHECK(br[0] == doctest::Approx(0.5).epsilon(1e-14));         // eta/T
  CHECK(br[1] == doctest::Approx(31.0 / 60.0).epsilon(1e-14)); // head branch
  CHECK(br[2] == doctest::Approx(31.0 / 29.0).epsilon(1e-14)); // tail branch
  CHECK(cone_gamma(p) == doctest::Approx(0.5).epsilon(1e-14));

  Expr a = a_of("5/32*(2-t)^3");
  auto c = compute_cone_constants(p, a);
  CHECK(c.gamma == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.lambda1 == doctest::Approx(7.0 / 17.0).epsilon(1e-9));
  CHECK(c.lambda2 == doctest::Approx(896.0 / 15.0).epsilon(1e-9));
  CHECK(c.alpha_sup == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c.beta_sup == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("worked set 2: alpha=20, beta=1/10, eta=1/4, T=3/4, a=8") {
  BvpParams p{20.0, 0.1, 0.25, 0.75};
  auto br = cone_gamma_branches(p);
  CHECK(br[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(br[1] == doctest::Approx(11.0 / 12.0).epsilon(1e-13));
  CHECK(br[2] == doctest::Approx(22.0).epsilon(1e-13));
  CHECK(cone_gamma(p) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  auto c = compute_cone_constants(p, a_of("8"));
  CHECK(c.lambda2 == doctest::Approx(0.15).epsilon(1e-9));
}

TEST_CASE("worked set 3: alpha=3, beta=1/2, eta=1/3, T=1, a=1") {
  BvpParams p{3.0, 0.5, 1.0 / 3.0, 1.0};
  auto br = cone_gamma_branches(p);
  CHECK(br[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(br[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(br[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(cone_gamma(p) == doctest::Approx(0.25).epsilon(1e-14));

  auto c = compute_cone_constants(p, a_of("1"));
  CHECK(c.lambda1 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(c.lambda2 == doctest::Approx(22.5).epsilon(1e-9));
}

TEST_CASE("worked set 4: alpha=1, beta=1, eta=1/2, T=1, a=6t/25") {
  BvpParams p{1.0, 1.0, 0.5, 1.0};
  auto br = cone_gamma_branches(p);
  CHECK(br[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(br[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(br[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(cone_gamma(p) == doctest::Approx(0.25).epsilon(1e-14));

  auto c = compute_cone_constants(p, a_of("6/25*t"));
  CHECK(c.lambda1 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c.lambda2 == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("scaling the coefficient divides both thresholds and fixes gamma") {
  BvpParams p{3.0, 0.5, 1.0 / 3.0, 1.0};
  Expr a1 = a_of("1 + t^2");
  Expr a4 = a_of("4*(1 + t^2)");
  auto c1 = compute_cone_constants(p, a1);
  auto c4 = compute_cone_constants(p, a4);
  CHECK(c4.gamma == doctest::Approx(c1.gamma).epsilon(1e-14));
  CHECK(c4.lambda1 == doctest::Approx(c1.lambda1 / 4.0).epsilon(1e-11));
  CHECK(c4.lambda2 == doctest::Approx(c1.lambda2 / 4.0).epsilon(1e-11));
}

TEST_CASE("gamma lands strictly inside (0,1) across the window") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int tried = 0;
  while (tried < 200) {
    double T = 0.3 + 2.7 * unit(rng);
    double eta = T * (0.05 + 0.9 * unit(rng));
    BvpParams p{0.0, 0.0, eta, T};
    p.alpha = p.alpha_sup() * (0.02 + 0.96 * unit(rng));
    double bs = p.beta_sup();
    p.beta = bs * 0.98 * unit(rng);
    if (!p.in_positivity_window()) continue;
    ++tried;
    double g = cone_gamma(p);
    CAPTURE(p.alpha);
    CAPTURE(p.beta);
    CAPTURE(p.eta);
    CAPTURE(p.T);
    REQUIRE(g > 0.0);
    REQUIRE(g < 1.0);
    auto br = cone_gamma_branches(p);
    REQUIRE(g == doctest::Approx(std::min({br[0], br[1], br[2]})).epsilon(1e-15));
  }
}

TEST_CASE("vanishing tail weight degenerates lambda2") {
  // a supported only on [0, 0.3] while eta = 0.5: the tail integral of
  // (T - s) a(s) over [eta, T] is identically zero.
  BvpParams p{1.0, 0.1, 0.5, 1.0};
  REQUIRE(p.in_positivity_window());
  Expr a = a_of("(0.3 - t + abs(0.3 - t))/2");
  CHECK_THROWS_AS(compute_cone_constants(p, a), DegenerateProblem);
}

TEST_CASE("coefficient sign sampling") {
  BvpParams p{2.0, 1.0 / 30.0, 1.0, 2.0};
  Expr f_ok = Expr::parse("u^(1/2)/2 + u^2/32", "u");
  auto rep = bvp::check_coefficients(a_of("5/32*(2-t)^3"), f_ok, p);
  CHECK(rep.a_nonneg);
  CHECK(rep.a_positive_on_tail);
  CHECK(rep.f_nonneg);

  auto neg_a = bvp::check_coefficients(a_of("t - 1"), f_ok, p);
  CHECK_FALSE(neg_a.a_nonneg);

  Expr f_neg = Expr::parse("u - 2", "u");
  auto bad_f = bvp::check_coefficients(a_of("1"), f_neg, p);
  CHECK_FALSE(bad_f.f_nonneg);

  // a vanishing past eta is nonnegative but not positive on the tail
  BvpParams q{1.0, 0.1, 0.5, 1.0};
  auto tail0 = bvp::check_coefficients(a_of("(0.3 - t + abs(0.3 - t))/2"), f_ok, q);
  CHECK(tail0.a_nonneg);
  CHECK_FALSE(tail0.a_positive_on_tail);

  // geometry is all the sampler needs: an inadmissible alpha still reports
  BvpParams wide{9.0, 0.1, 0.5, 1.0};
  auto rep2 = bvp::check_coefficients(a_of("1"), f_ok, wide);
  CHECK(rep2.a_nonneg);
  CHECK_THROWS_AS(bvp::check_coefficients(a_of("1"), f_ok,
                                          BvpParams{1.0, 0.0, 2.0, 1.0}),
                  std::invalid_argument);
}
