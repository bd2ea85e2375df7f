#pragma once

// Immersion coordinate expressions: a small arithmetic language over the chart
// variables x and y.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' power)?              (right-associative)
//   atom  := number | x | y | pi | fn '(' expr ')' | '(' expr ')'
//   fn    := sin cos sinh cosh exp log sqrt tanh
//
// A unary minus is not an atom, so "2^-x" is rejected; write "2^(-x)".

#include <memory>
#include <string>
#include <string_view>

#include "nullgeo/jet.hpp"

namespace nullgeo {

enum class NodeKind { constant, variable, unary, binary };

struct ExprNode;

class Expr {
 public:
  Expr() = default;

  /// Non-negative finite constants only; negative values are neg(constant).
  static Expr constant(double value);
  static Expr variable(Var which);
  static Expr unary(JetFn fn, Expr child);
  static Expr binary(JetOp op, Expr lhs, Expr rhs);

  bool empty() const { return node_ == nullptr; }
  const ExprNode& node() const { return *node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  NodeKind kind = NodeKind::constant;
  double value = 0.0;
  Var var = Var::x;
  JetFn fn = JetFn::neg;
  JetOp op = JetOp::add;
  Expr lhs;  // unary child, or binary left operand
  Expr rhs;
};

/// Throws ParseError with the byte offset of the offending token.
Expr parse_expr(std::string_view text);

/// Fully parenthesized text that parses back to an identical tree.
std::string print_expr(const Expr& e);

double eval_value(const Expr& e, double x, double y);
Jet2 eval_jet(const Expr& e, double x, double y);

bool depends_on(const Expr& e, Var which);

/// Convenience builders used when assembling families of immersions.
Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);

const char* fn_name(JetFn fn);

}  // namespace nullgeo
