#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "bvp/errors.hpp"

namespace bvp {

// Immutable arithmetic expression in one declared variable.
//
// Grammar (no implicit multiplication, ^ is right-associative and binds
// tighter than unary minus):
//
//   expression := term (('+'|'-') term)*
//   term       := unary (('*'|'/') unary)*
//   unary      := '-' unary | power
//   power      := primary ('^' unary)?
//   primary    := number | name | name '(' expression ')' | '(' expression ')'
//
// Names resolve to the declared variable, the constants e and pi, or one of
// exp, log, sqrt, abs, sin, cos. Number literals are plain decimals;
// fractions like 5/32 are ordinary division.
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  enum class Kind {
    kNumber,
    kVariable,
    kConstE,
    kConstPi,
    kNeg,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
    kExp,
    kLog,
    kSqrt,
    kAbs,
    kSin,
    kCos,
  };

  struct Node {
    Kind kind;
    double number = 0.0;  // kNumber only
    NodePtr a, b;         // operands; unary ops and calls use a
  };

  Expr() = default;

  // Throws ParseError (with character position) on malformed input.
  static Expr parse(std::string_view source, std::string_view variable_name);

  // Evaluates at variable = value. Throws EvalError on domain violations and
  // non-finite results. An empty Expr throws std::logic_error.
  double eval(double value) const;

  // Round-trippable text form: parse(to_string(), var) is structurally equal
  // to *this.
  std::string to_string() const;

  bool empty() const noexcept { return root_ == nullptr; }
  const std::string& variable_name() const noexcept { return variable_; }
  const NodePtr& root() const noexcept { return root_; }

  friend bool structurally_equal(const Expr& x, const Expr& y);

 private:
  NodePtr root_;
  std::string variable_;
};

bool structurally_equal(const Expr& x, const Expr& y);

}  // namespace bvp
