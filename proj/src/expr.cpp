#include "nullgeo/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

constexpr std::array<std::pair<std::string_view, JetFn>, 8> kFunctions{{
    {"sin", JetFn::sin},
    {"cos", JetFn::cos},
    {"sinh", JetFn::sinh},
    {"cosh", JetFn::cosh},
    {"exp", JetFn::exp},
    {"log", JetFn::log},
    {"sqrt", JetFn::sqrt},
    {"tanh", JetFn::tanh},
}};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("one of {'+', '-', '*', '/', '^', end of input}");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": expected " + expected, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(JetOp::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(JetOp::sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(JetOp::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(JetOp::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::unary(JetFn::neg, parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(JetOp::pow, base, parse_power());
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("one of {number, identifier, '('}");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) fail("')'");
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    fail("one of {number, identifier, '('}");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    }
    if (pos_ - start == 1 && s_[start] == '.') {
      pos_ = start;
      fail("digit");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p >= s_.size() || !is_digit(s_[p])) {
        pos_ = p;
        fail("exponent digits");
      }
      while (p < s_.size() && is_digit(s_[p])) ++p;
      pos_ = p;
    }
    double value = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (res.ec != std::errc() || !std::isfinite(value)) {
      pos_ = start;
      fail("finite number");
    }
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (is_ident_start(s_[pos_]) || is_digit(s_[pos_]))) ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "x") return Expr::variable(Var::x);
    if (id == "y") return Expr::variable(Var::y);
    if (id == "pi") return Expr::constant(std::numbers::pi);
    for (const auto& [name, fn] : kFunctions) {
      if (id == name) {
        if (!accept('(')) fail("'(' after function name");
        Expr arg = parse_sum();
        if (!accept(')')) fail("')'");
        return Expr::unary(fn, arg);
      }
    }
    throw ParseError("unknown identifier '" + std::string(id) + "' at offset " + std::to_string(start), start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

char op_char(JetOp op) {
  switch (op) {
    case JetOp::add: return '+';
    case JetOp::sub: return '-';
    case JetOp::mul: return '*';
    case JetOp::div: return '/';
    case JetOp::pow: return '^';
  }
  return '?';
}

// Scalar counterparts of the jet rules, with the same domain checks.
double apply_scalar(JetFn fn, double a) {
  switch (fn) {
    case JetFn::sin: return std::sin(a);
    case JetFn::cos: return std::cos(a);
    case JetFn::sinh: return std::sinh(a);
    case JetFn::cosh: return std::cosh(a);
    case JetFn::exp: return std::exp(a);
    case JetFn::log:
      if (!(a > 0.0)) throw EvaluationDomainError("log of non-positive value " + std::to_string(a));
      return std::log(a);
    case JetFn::sqrt:
      if (!(a > 0.0)) throw EvaluationDomainError("sqrt of non-positive value " + std::to_string(a));
      return std::sqrt(a);
    case JetFn::tanh: return std::tanh(a);
    case JetFn::neg: return -a;
  }
  throw UsageError("unknown function");
}

double apply_scalar(JetOp op, double a, double b) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::sub: return a - b;
    case JetOp::mul: return a * b;
    case JetOp::div:
      if (b == 0.0) throw EvaluationDomainError("division by zero");
      return a / b;
    case JetOp::pow: {
      const bool integral = std::floor(b) == b;
      if (integral && std::abs(b) <= 8) {
        double r = 1.0;
        for (int i = 0; i < static_cast<int>(std::abs(b)); ++i) r *= a;
        if (b < 0) {
          if (r == 0.0) throw EvaluationDomainError("division by zero");
          r = 1.0 / r;
        }
        return r;
      }
      if (!integral && !(a > 0.0)) {
        throw EvaluationDomainError("non-integer power of non-positive base " + std::to_string(a));
      }
      return std::pow(a, b);
    }
  }
  throw UsageError("unknown operator");
}

template <typename T>
T evaluate(const Expr& e, double x, double y) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::constant:
      if constexpr (std::is_same_v<T, Jet2>) {
        return Jet2::constant(n.value);
      } else {
        return n.value;
      }
    case NodeKind::variable:
      if constexpr (std::is_same_v<T, Jet2>) {
        return jet_var(n.var, n.var == Var::x ? x : y);
      } else {
        return n.var == Var::x ? x : y;
      }
    case NodeKind::unary: {
      const T a = evaluate<T>(n.lhs, x, y);
      if constexpr (std::is_same_v<T, Jet2>) {
        return jet_elementary(n.fn, a);
      } else {
        return apply_scalar(n.fn, a);
      }
    }
    case NodeKind::binary: {
      const T a = evaluate<T>(n.lhs, x, y);
      const T b = evaluate<T>(n.rhs, x, y);
      if constexpr (std::is_same_v<T, Jet2>) {
        return jet_combine(n.op, a, b);
      } else {
        return apply_scalar(n.op, a, b);
      }
    }
  }
  throw UsageError("corrupt expression tree");
}

void print_into(const Expr& e, std::string& out) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::constant: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, res.ptr);
      return;
    }
    case NodeKind::variable:
      out += n.var == Var::x ? 'x' : 'y';
      return;
    case NodeKind::unary:
      if (n.fn == JetFn::neg) {
        out += "(-";
        print_into(n.lhs, out);
        out += ')';
      } else {
        out += fn_name(n.fn);
        out += '(';
        print_into(n.lhs, out);
        out += ')';
      }
      return;
    case NodeKind::binary:
      out += '(';
      print_into(n.lhs, out);
      out += ' ';
      out += op_char(n.op);
      out += ' ';
      print_into(n.rhs, out);
      out += ')';
      return;
  }
}

}  // namespace

const char* fn_name(JetFn fn) {
  switch (fn) {
    case JetFn::sin: return "sin";
    case JetFn::cos: return "cos";
    case JetFn::sinh: return "sinh";
    case JetFn::cosh: return "cosh";
    case JetFn::exp: return "exp";
    case JetFn::log: return "log";
    case JetFn::sqrt: return "sqrt";
    case JetFn::tanh: return "tanh";
    case JetFn::neg: return "neg";
  }
  return "?";
}

Expr Expr::constant(double value) {
  if (!std::isfinite(value) || value < 0.0 || std::signbit(value)) {
    throw UsageError("Expr::constant takes a non-negative finite value");
  }
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(Var which) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::variable;
  n->var = which;
  return Expr(std::move(n));
}

Expr Expr::unary(JetFn fn, Expr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::unary;
  n->fn = fn;
  n->lhs = std::move(child);
  return Expr(std::move(n));
}

Expr Expr::binary(JetOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.empty() || b.empty()) return false;
  const ExprNode& l = a.node();
  const ExprNode& r = b.node();
  if (l.kind != r.kind) return false;
  switch (l.kind) {
    case NodeKind::constant: return l.value == r.value;
    case NodeKind::variable: return l.var == r.var;
    case NodeKind::unary: return l.fn == r.fn && l.lhs == r.lhs;
    case NodeKind::binary: return l.op == r.op && l.lhs == r.lhs && l.rhs == r.rhs;
  }
  return false;
}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

double eval_value(const Expr& e, double x, double y) { return evaluate<double>(e, x, y); }

Jet2 eval_jet(const Expr& e, double x, double y) { return evaluate<Jet2>(e, x, y); }

bool depends_on(const Expr& e, Var which) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::constant: return false;
    case NodeKind::variable: return n.var == which;
    case NodeKind::unary: return depends_on(n.lhs, which);
    case NodeKind::binary: return depends_on(n.lhs, which) || depends_on(n.rhs, which);
  }
  return false;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(JetOp::add, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(JetOp::mul, a, b); }

}  // namespace nullgeo
