#pragma once

// Bivectors of R^{3,1} in the basis (e12, e13, e14, e23, e24, e34), and the
// Gauss map of a timelike surface into the Grassmannian of oriented
// timelike planes.

#include <array>
#include <complex>
#include <vector>

#include "nullgeo/checks.hpp"
#include "nullgeo/curvature.hpp"
#include "nullgeo/fd.hpp"
#include "nullgeo/report.hpp"

namespace nullgeo {

class Bivector {
 public:
  Bivector() = default;
  explicit Bivector(const std::array<double, 6>& c) : c_(c) {}
  static Bivector basis(int k);

  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::array<double, 6>& coeffs() const { return c_; }

  Bivector& operator+=(const Bivector& o);
  Bivector& operator-=(const Bivector& o);
  Bivector& operator*=(double s);
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator-(Bivector a) { return a *= -1.0; }
  friend Bivector operator*(double s, Bivector a) { return a *= s; }
  friend Bivector operator*(Bivector a, double s) { return a *= s; }

  double max_abs() const;

 private:
  std::array<double, 6> c_{};
};

Bivector wedge(const MinkVec& u, const MinkVec& v);
double lambda2_inner(const Bivector& a, const Bivector& b);
/// Coefficient of e1^e2^e3^e4 in a^b, times the orientation sign.
double wedge4(const Bivector& a, const Bivector& b, int orientation = 1);
/// <star a, b> = wedge4(a, b) for every b.
Bivector star(const Bivector& a, int orientation = 1);
Bivector cpx_mul_i(const Bivector& a, int orientation = 1);
/// (re + i im) a with i acting as cpx_mul_i.
Bivector cpx_scale(std::complex<double> z, const Bivector& a, int orientation = 1);
std::complex<double> h_form(const Bivector& a, const Bivector& b, int orientation = 1);

/// Max |star(star(e_k)) + e_k| over the basis.
double star_squared_residual();

/// Needs nu (non-ruled point) in dim 4; throws UnsupportedPointError.
const PointGeometry& require_gauss_point(const PointGeometry& g);

Bivector gauss_map(const PointGeometry& g);
/// s (psi_x ^ psi_y) / sqrt(F^2 - EG), with s = sign(W.p Zt.q - W.q Zt.p).
Bivector gauss_map_chart(const PointGeometry& g);

struct NPair {
  Bivector N1;  // Z⊥ ^ W
  Bivector N2;  // Z⊥ ^ Zt
};
NPair n1n2(const PointGeometry& g);

enum class DgRoute { formula, fd };

/// dG(X) for the wedge closed form. Linear in X = alpha Zt + beta W.
Bivector dgauss_formula(const PointGeometry& g, const TangentVec& X);
/// Same quantity written in the N1/N2 complex basis.
Bivector dgauss_formula_n(const PointGeometry& g, const TangentVec& X);
/// Central difference of gauss_map along X's chart direction.
Bivector dgauss_fd(const SurfaceDef& def, const PointGeometry& g, const TangentVec& X, const FdOptions& fd);
Bivector dgauss(const SurfaceDef& def, ChartPoint pt, const TangentVec& X, DgRoute route, const FdOptions& fd = {});

/// Symmetric complex form in the basis (c Zt, W / c).
struct CpxQuadForm {
  std::complex<double> zz, zw, ww;
};

/// Direct route: h_form on formula dG. c rescales the null pair.
CpxQuadForm pullback_gh(const PointGeometry& g, double c = 1.0);
CpxQuadForm pullback_gh_closed(const PointGeometry& g, double c = 1.0);
std::complex<double> pullback_disc(const CpxQuadForm& q);

struct DeltaData {
  double zz = 0.0, zw = 0.0, ww = 0.0;
  double Delta = 0.0;  // det of the delta matrix in the null basis
};
DeltaData delta_and_Delta(const PointGeometry& g, const CpxQuadForm& q);

struct AsymptoticDirections {
  bool all = false;
  std::vector<TangentVec> directions;
};
/// delta(u) = 0 for u = Zt + t W. Directions are in the unscaled frame.
AsymptoticDirections asymptotic_directions(const PointGeometry& g, const DeltaData& d, double c, double tol);

/// Per-point gauss-map residuals. Skips (with a note) ruled points.
Fragment gauss_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd);

}  // namespace nullgeo
