#pragma once

// Per-point residual suites for the curvature identities. Each suite builds
// frame-dependent fields afresh at every stencil point and differences them
// with the FD oracle.

#include "nullgeo/curvature.hpp"
#include "nullgeo/expr.hpp"
#include "nullgeo/fd.hpp"
#include "nullgeo/report.hpp"

namespace nullgeo {

struct Tolerances {
  double frame = 1e-9;      // null detection band and exact jet identities
  double first_fd = 1e-6;   // --tol
  double second_fd = 1e-4;  // --tol2
  double ruled = 1e-7;
  double dg_fd = 1e-5;
  double pullback = 1e-6;
  double harmonic = 1e-8;
  double star = 1e-12;
  double outer_h = 1e-3;    // step for the triply nested a1 Laplacian
};

// Fields on the chart, evaluated from the jets at each sample point.
VectorField zt_field(const SurfaceDef& def);
VectorField zperp_field(const SurfaceDef& def);
VectorField mean_curvature_field(const SurfaceDef& def);
ScalarField a_field(const SurfaceDef& def, double tol = 1e-9);
ScalarField gauss_curvature_field(const SurfaceDef& def);

/// Closed-form invariants at the point: frame relations, tangency of II,
/// the two H routes, the normal decomposition of II(W,W).
Fragment frame_residuals(const PointGeometry& g, const Tolerances& t);

/// Levi-Civita and normal-connection relations for Zt and Zperp (r1..r6).
Fragment compatibility_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd);

/// K = Zt(a), K = |H|^2 - <II(W,W),II(Zt,Zt)>, the Laplacian of a, and the
/// observations consumed by the grid-level K = 0 rules.
Fragment identity_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd);

/// KN from the normal curvature tensor, <R_perp(Zt,W)Zperp, nu>, by FD of the
/// normal connection form. Dim 4 with nu present.
double normal_curvature_ricci(const SurfaceDef& def, ChartPoint pt, const FdOptions& fd, double tol = 1e-9);

/// Jet partials against FD of the plain position map, relative to max(|jet|, 1).
double jet_vs_fd(const SurfaceDef& def, ChartPoint pt, const FdOptions& fd);

struct GeodesicResult {
  enum class Status { ok, not_lightlike, degenerate };
  Status status = Status::ok;
  double value = 0.0;       // |Tan(D_grad grad)| when ok
  double grad_norm2 = 0.0;  // <grad f, grad f>
};

/// Geodesic residual of the integral curves of grad f on the surface m0.
GeodesicResult geodesic_residual(const SurfaceDef& m0, const Expr& f, ChartPoint pt, const FdOptions& fd,
                                 double tol = 1e-9);

/// Ambient grad f on m0.
MinkVec surface_gradient(const SurfaceDef& m0, const Expr& f, ChartPoint pt);

}  // namespace nullgeo
