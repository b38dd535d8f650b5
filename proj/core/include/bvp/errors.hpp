#pragma once

#include <stdexcept>
#include <string>

namespace bvp {

// Syntax error in an expression or a problem file. `position` is the byte
// offset of the offending character in the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Expression evaluated outside its domain (sqrt of a negative, log of a
// nonpositive, zero to a negative power, non-integer power of a negative
// base) or the result was not finite (overflow, 0/0).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem data makes a requested quantity meaningless, e.g. a weighted
// integral of the coefficient a(t) vanishes so no growth threshold exists.
class DegenerateProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampled limits of f(u)/u settled into none of the recognized classes and
// no declared values were supplied.
class InconclusiveAsymptotics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bvp
