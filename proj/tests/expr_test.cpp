#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bvp/errors.hpp"
#include "bvp/expr.hpp"

using bvp::EvalError;
using bvp::Expr;
using bvp::ParseError;

namespace {
double ev(const std::string& src, double x, const std::string& var = "u") {
  return Expr::parse(src, var).eval(x);
}
}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(ev("2+3*4", 0) == 14.0);
  CHECK(ev("(2+3)*4", 0) == 20.0);
  CHECK(ev("2-3-4", 0) == -5.0);
  CHECK(ev("12/4/3", 0) == 1.0);
  CHECK(ev("7/2", 0) == 3.5);
  CHECK(ev("1+2*3-4/8", 0) == doctest::Approx(6.5).epsilon(1e-15));
}

TEST_CASE("power is right associative and binds above unary minus") {
  CHECK(ev("2^3^2", 0) == 512.0);
  CHECK(ev("-2^2", 0) == -4.0);
  CHECK(ev("2^-3", 0) == 0.125);
  CHECK(ev("(0-2)^3", 0) == -8.0);
  CHECK(ev("(0-2)^2", 0) == 4.0);
  CHECK(ev("--3", 0) == 3.0);
  CHECK(ev("2^0.5", 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("variable substitution") {
  CHECK(ev("u^2 + 1", 3) == 10.0);
  CHECK(ev("t*(2-t)", 0.5, "t") == 0.75);
  Expr f = Expr::parse("u/2", "u");
  CHECK(f.eval(5.0) == 2.5);
  CHECK(f.eval(-4.0) == -2.0);
}

TEST_CASE("functions match the standard library") {
  for (double x : {0.1, 0.77, 1.0, 2.5, 6.0}) {
    CHECK(ev("exp(u)", x) == std::exp(x));
    CHECK(ev("log(u)", x) == std::log(x));
    CHECK(ev("sqrt(u)", x) == std::sqrt(x));
    CHECK(ev("sin(u)", x) == std::sin(x));
    CHECK(ev("cos(u)", x) == std::cos(x));
    CHECK(ev("abs(0-u)", x) == x);
  }
}

TEST_CASE("named constants") {
  CHECK(ev("pi", 0) == doctest::Approx(3.14159265358979).epsilon(1e-14));
  CHECK(ev("e", 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(ev("e^2", 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
  SUBCASE("the variable shadows a constant of the same name") {
    CHECK(ev("e+1", 4.0, "e") == 5.0);
  }
}

TEST_CASE("whitespace and numbers") {
  CHECK(ev("  1.5e2 ", 0) == 150.0);
  CHECK(ev("0.1", 0) == 0.1);
  CHECK(ev("5/32*(2-t)^3", 2.0, "t") == 0.0);
  CHECK(ev("5/32*(2-t)^3", 0.0, "t") == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(Expr::parse("2+", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse(")", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse("(1+2", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 2", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse("", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse("bogus(3)", "u"), ParseError);
  CHECK_THROWS_AS(Expr::parse("x+1", "u"), ParseError);
  try {
    Expr::parse("1 + x", "u");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("evaluation errors on domain violations") {
  CHECK_THROWS_AS(ev("log(u)", 0.0), EvalError);
  CHECK_THROWS_AS(ev("log(u)", -1.0), EvalError);
  CHECK_THROWS_AS(ev("sqrt(u)", -1.0), EvalError);
  CHECK_THROWS_AS(ev("u^0.5", -2.0), EvalError);
  CHECK_THROWS_AS(ev("1/u", 0.0), EvalError);
  CHECK_THROWS_AS(ev("u^(0-1)", 0.0), EvalError);
  CHECK_THROWS_AS(ev("exp(u)", 1e10), EvalError);  // overflow is an error
}

TEST_CASE("printing round-trips structurally") {
  const std::vector<std::string> corpus = {
      "5/32*(2-t)^3",
      "u^(1/2)/2 + u^2/32",
      "exp(6)*u^2*exp(-u)",
      "183*u*exp(2*u)/(637 + exp(u) + exp(2*u))",
      "6/25*t",
      "u*(1 + 799/(1+u^2))",
  };
  for (const auto& src : corpus) {
    std::string var = src.find('u') != std::string::npos ? "u" : "t";
    Expr first = Expr::parse(src, var);
    Expr second = Expr::parse(first.to_string(), var);
    CAPTURE(src);
    CAPTURE(first.to_string());
    CHECK(structurally_equal(first, second));
    for (double x : {0.17, 1.0, 3.5}) {
      CHECK(first.eval(x) == second.eval(x));
    }
  }
}

TEST_CASE("printing preserves grouping against precedence") {
  for (const char* src : {"1-(2-3)", "8/(4/2)", "(2^3)^2", "2*(3+4)"}) {
    Expr first = Expr::parse(src, "u");
    Expr second = Expr::parse(first.to_string(), "u");
    CAPTURE(src);
    CHECK(first.eval(0.0) == second.eval(0.0));
  }
}
