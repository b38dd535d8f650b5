#include "bvp/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bvp {

namespace {

using Kind = Expr::Kind;
using NodePtr = Expr::NodePtr;

NodePtr make_node(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Kind::kNumber;
  n->number = v;
  return n;
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

struct FunctionEntry {
  std::string_view name;
  Kind kind;
};

constexpr FunctionEntry kFunctions[] = {
    {"exp", Kind::kExp}, {"log", Kind::kLog}, {"sqrt", Kind::kSqrt},
    {"abs", Kind::kAbs}, {"sin", Kind::kSin}, {"cos", Kind::kCos},
};

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  NodePtr run() {
    NodePtr root = expression();
    skip_ws();
    if (pos_ != src_.size()) fail("operator or end of input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("syntax error at position " + std::to_string(pos_) +
                         ": expected " + expected,
                     pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+'))
        lhs = make_node(Kind::kAdd, lhs, term());
      else if (consume('-'))
        lhs = make_node(Kind::kSub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (consume('*'))
        lhs = make_node(Kind::kMul, lhs, unary());
      else if (consume('/'))
        lhs = make_node(Kind::kDiv, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (consume('-')) return make_node(Kind::kNeg, unary());
    return power();
  }

  // Right-associative; the exponent re-enters unary() so 2^-3 and 2^3^2 work.
  NodePtr power() {
    NodePtr base = primary();
    if (consume('^')) return make_node(Kind::kPow, base, unary());
    return base;
  }

  NodePtr primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!consume(')')) fail("')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (is_name_start(c)) return name();
    fail("number, name, or '('");
  }

  NodePtr number() {
    double v = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr == begin) fail("number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_number(v);
  }

  NodePtr name() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    std::string_view id = src_.substr(start, pos_ - start);
    if (id == var_) return make_node(Kind::kVariable);
    if (id == "e") return make_node(Kind::kConstE);
    if (id == "pi") return make_node(Kind::kConstPi);
    for (const auto& fn : kFunctions) {
      if (id == fn.name) {
        if (!consume('(')) fail("'(' after '" + std::string(id) + "'");
        NodePtr arg = expression();
        if (!consume(')')) fail("')'");
        return make_node(fn.kind, arg);
      }
    }
    throw ParseError("unknown identifier '" + std::string(id) +
                         "' at position " + std::to_string(start) +
                         " (variable here is '" + std::string(var_) + "')",
                     start);
  }

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

double check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case Kind::kNumber:
      return n.number;
    case Kind::kVariable:
      return x;
    case Kind::kConstE:
      return 2.718281828459045235360287471352662498;
    case Kind::kConstPi:
      return 3.141592653589793238462643383279502884;
    case Kind::kNeg:
      return -eval_node(*n.a, x);
    case Kind::kAdd:
      return check_finite(eval_node(*n.a, x) + eval_node(*n.b, x), "'+'");
    case Kind::kSub:
      return check_finite(eval_node(*n.a, x) - eval_node(*n.b, x), "'-'");
    case Kind::kMul:
      return check_finite(eval_node(*n.a, x) * eval_node(*n.b, x), "'*'");
    case Kind::kDiv:
      return check_finite(eval_node(*n.a, x) / eval_node(*n.b, x), "'/'");
    case Kind::kPow: {
      double base = eval_node(*n.a, x);
      double exponent = eval_node(*n.b, x);
      if (base == 0.0 && exponent < 0.0)
        throw EvalError("domain error: 0 raised to a negative power");
      if (base < 0.0 && std::nearbyint(exponent) != exponent)
        throw EvalError("domain error: negative base with non-integer exponent");
      return check_finite(std::pow(base, exponent), "'^'");
    }
    case Kind::kExp:
      return check_finite(std::exp(eval_node(*n.a, x)), "exp");
    case Kind::kLog: {
      double v = eval_node(*n.a, x);
      if (v <= 0.0) throw EvalError("domain error: log of a nonpositive value");
      return check_finite(std::log(v), "log");
    }
    case Kind::kSqrt: {
      double v = eval_node(*n.a, x);
      if (v < 0.0) throw EvalError("domain error: sqrt of a negative value");
      return std::sqrt(v);
    }
    case Kind::kAbs:
      return std::fabs(eval_node(*n.a, x));
    case Kind::kSin:
      return std::sin(eval_node(*n.a, x));
    case Kind::kCos:
      return std::cos(eval_node(*n.a, x));
  }
  throw std::logic_error("corrupt expression node");
}

// Binding strength used to decide parenthesization when printing.
int precedence(Kind k) {
  switch (k) {
    case Kind::kAdd:
    case Kind::kSub:
      return 1;
    case Kind::kMul:
    case Kind::kDiv:
      return 2;
    case Kind::kNeg:
      return 3;
    case Kind::kPow:
      return 4;
    default:
      return 5;
  }
}

std::string number_to_string(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void print_node(const Expr::Node& n, const std::string& var, std::string& out);

void print_child(const Expr::Node& child, const std::string& var, int parent_prec,
                 bool needs_paren_on_tie, std::string& out) {
  bool paren = precedence(child.kind) < parent_prec ||
               (needs_paren_on_tie && precedence(child.kind) == parent_prec);
  if (paren) out += '(';
  print_node(child, var, out);
  if (paren) out += ')';
}

void print_node(const Expr::Node& n, const std::string& var, std::string& out) {
  switch (n.kind) {
    case Kind::kNumber:
      out += number_to_string(n.number);
      return;
    case Kind::kVariable:
      out += var;
      return;
    case Kind::kConstE:
      out += 'e';
      return;
    case Kind::kConstPi:
      out += "pi";
      return;
    case Kind::kNeg:
      out += '-';
      print_child(*n.a, var, precedence(Kind::kNeg), false, out);
      return;
    case Kind::kAdd:
    case Kind::kSub: {
      int p = precedence(n.kind);
      print_child(*n.a, var, p, false, out);
      out += n.kind == Kind::kAdd ? " + " : " - ";
      print_child(*n.b, var, p, n.kind == Kind::kSub, out);
      return;
    }
    case Kind::kMul:
    case Kind::kDiv: {
      int p = precedence(n.kind);
      print_child(*n.a, var, p, false, out);
      out += n.kind == Kind::kMul ? "*" : "/";
      print_child(*n.b, var, p, true, out);
      return;
    }
    case Kind::kPow:
      // Right-associative: parenthesize a left power, not a right one.
      print_child(*n.a, var, precedence(Kind::kPow), true, out);
      out += '^';
      print_child(*n.b, var, precedence(Kind::kPow), false, out);
      return;
    case Kind::kExp:
    case Kind::kLog:
    case Kind::kSqrt:
    case Kind::kAbs:
    case Kind::kSin:
    case Kind::kCos: {
      static constexpr const char* names[] = {"exp", "log", "sqrt",
                                              "abs", "sin", "cos"};
      out += names[static_cast<int>(n.kind) - static_cast<int>(Kind::kExp)];
      out += '(';
      print_node(*n.a, var, out);
      out += ')';
      return;
    }
  }
}

bool nodes_equal(const Expr::Node* x, const Expr::Node* y) {
  if (x == y) return true;
  if (x == nullptr || y == nullptr) return false;
  if (x->kind != y->kind) return false;
  if (x->kind == Kind::kNumber && x->number != y->number) return false;
  return nodes_equal(x->a.get(), y->a.get()) && nodes_equal(x->b.get(), y->b.get());
}

}  // namespace

Expr Expr::parse(std::string_view source, std::string_view variable_name) {
  Expr e;
  e.variable_ = std::string(variable_name);
  e.root_ = Parser(source, variable_name).run();
  return e;
}

double Expr::eval(double value) const {
  if (!root_) throw std::logic_error("eval of an empty expression");
  return eval_node(*root_, value);
}

std::string Expr::to_string() const {
  if (!root_) return std::string();
  std::string out;
  print_node(*root_, variable_, out);
  return out;
}

bool structurally_equal(const Expr& x, const Expr& y) {
  return nodes_equal(x.root_.get(), y.root_.get());
}

}  // namespace bvp
