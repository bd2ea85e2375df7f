#include "nullgeo/jet.hpp"

#include <cmath>
#include <string>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

// Integer exponents up to this magnitude use repeated multiplication, which
// keeps negative bases legal.
constexpr int kMaxRepeatedPower = 8;

Jet2 recip(const Jet2& b) {
  if (b.v == 0.0) throw EvaluationDomainError("division by zero");
  const double inv = 1.0 / b.v;
  return jet_chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 int_power(const Jet2& a, int n) {
  Jet2 r = Jet2::constant(1.0);
  for (int i = 0; i < std::abs(n); ++i) r = r * a;
  return n < 0 ? recip(r) : r;
}

}  // namespace

Jet2 jet_var(Var which, double value) {
  Jet2 j = Jet2::constant(value);
  (which == Var::x ? j.dx : j.dy) = 1.0;
  return j;
}

Jet2 jet_chain(const Jet2& a, double f, double df, double d2f) {
  return {f,
          df * a.dx,
          df * a.dy,
          d2f * a.dx * a.dx + df * a.dxx,
          d2f * a.dx * a.dy + df * a.dxy,
          d2f * a.dy * a.dy + df * a.dyy};
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dxy + b.dxy, a.dyy + b.dyy};
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dxy - b.dxy, a.dyy - b.dyy};
}

Jet2 operator-(const Jet2& a) { return {-a.v, -a.dx, -a.dy, -a.dxx, -a.dxy, -a.dyy}; }

Jet2 operator*(double s, const Jet2& a) { return {s * a.v, s * a.dx, s * a.dy, s * a.dxx, s * a.dxy, s * a.dyy}; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.dx * b.v + a.v * b.dx,
          a.dy * b.v + a.v * b.dy,
          a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx,
          a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy,
          a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy};
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }

Jet2 pow(const Jet2& a, const Jet2& b) {
  if (b.is_constant()) {
    const double c = b.v;
    const bool integral = std::floor(c) == c;
    if (integral && std::abs(c) <= kMaxRepeatedPower) return int_power(a, static_cast<int>(c));
    if (!integral && !(a.v > 0.0)) {
      throw EvaluationDomainError("non-integer power of non-positive base " + std::to_string(a.v));
    }
    if (a.v == 0.0 && c < 2.0) throw EvaluationDomainError("power derivative undefined at zero base");
    return jet_chain(a, std::pow(a.v, c), c * std::pow(a.v, c - 1.0), c * (c - 1.0) * std::pow(a.v, c - 2.0));
  }
  return exp(b * log(a));
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_chain(a, s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_chain(a, c, -s, -c);
}

Jet2 sinh(const Jet2& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_chain(a, s, c, s);
}

Jet2 cosh(const Jet2& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_chain(a, c, s, c);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return jet_chain(a, e, e, e);
}

Jet2 log(const Jet2& a) {
  if (!(a.v > 0.0)) throw EvaluationDomainError("log of non-positive value " + std::to_string(a.v));
  const double inv = 1.0 / a.v;
  return jet_chain(a, std::log(a.v), inv, -inv * inv);
}

Jet2 sqrt(const Jet2& a) {
  if (!(a.v > 0.0)) throw EvaluationDomainError("sqrt of non-positive value " + std::to_string(a.v));
  const double r = std::sqrt(a.v);
  return jet_chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

Jet2 tanh(const Jet2& a) {
  const double t = std::tanh(a.v);
  const double d = 1.0 - t * t;
  return jet_chain(a, t, d, -2.0 * t * d);
}

Jet2 jet_combine(JetOp op, const Jet2& a, const Jet2& b) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::sub: return a - b;
    case JetOp::mul: return a * b;
    case JetOp::div: return a / b;
    case JetOp::pow: return pow(a, b);
  }
  throw UsageError("unknown jet op");
}

Jet2 jet_elementary(JetFn fn, const Jet2& a) {
  switch (fn) {
    case JetFn::sin: return sin(a);
    case JetFn::cos: return cos(a);
    case JetFn::sinh: return sinh(a);
    case JetFn::cosh: return cosh(a);
    case JetFn::exp: return exp(a);
    case JetFn::log: return log(a);
    case JetFn::sqrt: return sqrt(a);
    case JetFn::tanh: return tanh(a);
    case JetFn::neg: return -a;
  }
  throw UsageError("unknown jet function");
}

}  // namespace nullgeo
