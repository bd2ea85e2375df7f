#pragma once

// Second-order forward-mode automatic differentiation in two variables.
// A Jet2 carries f, f_x, f_y, f_xx, f_xy, f_yy at one chart point; the mixed
// partial is stored once so symmetry holds by construction.

namespace nullgeo {

struct Jet2 {
  double v = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;

  static Jet2 constant(double value) { return {value, 0, 0, 0, 0, 0}; }
  bool is_constant() const { return dx == 0 && dy == 0 && dxx == 0 && dxy == 0 && dyy == 0; }
};

enum class Var { x, y };

Jet2 jet_var(Var which, double value);

enum class JetOp { add, sub, mul, div, pow };
enum class JetFn { sin, cos, sinh, cosh, exp, log, sqrt, tanh, neg };

Jet2 jet_combine(JetOp op, const Jet2& a, const Jet2& b);
Jet2 jet_elementary(JetFn fn, const Jet2& a);

/// Applies a scalar function given its value and first two derivatives at a.v.
Jet2 jet_chain(const Jet2& a, double f, double df, double d2f);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(double s, const Jet2& a);

Jet2 pow(const Jet2& a, const Jet2& b);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 sinh(const Jet2& a);
Jet2 cosh(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 tanh(const Jet2& a);

}  // namespace nullgeo
