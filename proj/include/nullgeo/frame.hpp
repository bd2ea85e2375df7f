#pragma once

#include <optional>

#include "nullgeo/mink.hpp"
#include "nullgeo/surface.hpp"

namespace nullgeo {

/// Induced metric in the chart basis (psi_x, psi_y).
struct FirstForm {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  double det = 0.0;    // EG - F^2
  double scale = 0.0;  // max Euclidean norm of psi_x, psi_y

  /// det < -eps_det * scale^4
  bool timelike(double eps_det = 1e-12) const;
};

FirstForm first_form(const PointJets& pj);

struct TangentVec {
  double p = 0.0;  // coefficient of psi_x
  double q = 0.0;  // coefficient of psi_y
  MinkVec ambient;
};

TangentVec make_tangent(double p, double q, const PointJets& pj);

/// Tangent part of an ambient vector, solved against the first form.
TangentVec tangent_part(const MinkVec& v, const PointJets& pj, const FirstForm& ff);
MinkVec normal_part(const MinkVec& v, const PointJets& pj, const FirstForm& ff);

/// Z^T for the constant field Z.
TangentVec tangent_project(const MinkVec& Z, const PointJets& pj, const FirstForm& ff);

struct NullDirection {
  bool has_cnd = false;
  TangentVec Zt;
};

/// Requires a timelike point (DegenerateMetricError otherwise). has_cnd is
/// true iff |Zt|_euclid > tol * scale and |<Zt,Zt>| <= tol * |Zt|_euclid^2.
NullDirection detect_null_direction(const SurfaceDef& def, ChartPoint point, double tol = 1e-9);
NullDirection detect_null_direction(const MinkVec& Z, const PointJets& pj, const FirstForm& ff, double tol = 1e-9);

enum class WSeed { psi_x, psi_y };

/// The null frame (Zt, W, Zperp, nu). nu and orientation_sign are filled in by
/// the curvature layer once II(Zt,Zt) is known.
struct AdaptedFrame {
  TangentVec Zt;
  TangentVec W;
  MinkVec Zperp;
  std::optional<MinkVec> nu;
  int orientation_sign = 1;
  WSeed seed = WSeed::psi_x;
};

/// W is built from the seed V = psi_x (or psi_y when |<Zt,psi_x>| < tol*scale^2):
/// W0 = V - <V,V>/(2<Zt,V>) Zt, W = -W0/<Zt,W0>. Zperp = Z - Zt.
/// Throws FrameError when there is no canonical null direction at the point.
AdaptedFrame build_adapted_frame(const SurfaceDef& def, ChartPoint point, double tol = 1e-9);
AdaptedFrame build_adapted_frame(const MinkVec& Z, const PointJets& pj, const FirstForm& ff, double tol = 1e-9);

}  // namespace nullgeo
