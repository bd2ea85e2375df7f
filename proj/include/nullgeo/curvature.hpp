#pragma once

#include <optional>

#include "nullgeo/frame.hpp"
#include "nullgeo/mink.hpp"
#include "nullgeo/surface.hpp"

namespace nullgeo {

/// Normal parts of psi_xx, psi_xy, psi_yy.
struct SecondForm {
  MinkVec xx, xy, yy;
};

SecondForm second_form(const PointJets& pj, const FirstForm& ff, double tol = 1e-9);

/// II(u,v), bilinear in the chart coefficients of u and v.
MinkVec ii_eval(const SecondForm& sf, const TangentVec& u, const TangentVec& v);

/// Half the metric trace of II. Needs no frame.
MinkVec mean_curvature_trace(const SecondForm& sf, const FirstForm& ff);

/// Gauss equation in a flat ambient space.
double gauss_curvature(const SecondForm& sf, const FirstForm& ff);

/// A_xi(X): the tangent vector g-dual to <II(X,.), xi>.
TangentVec shape_operator(const SecondForm& sf, const MinkVec& xi, const TangentVec& X, const PointJets& pj,
                          const FirstForm& ff);

struct CurvatureData {
  MinkVec H;        // -II(Zt, W)
  MinkVec H_trace;  // metric trace route
  double K = 0.0;
  double a = 0.0;
  MinkVec IIZZ;
  MinkVec IIWW;
  double IIZZ_norm = 0.0;  // Minkowski norm; 0 when nu is absent
  double KN = 0.0;
  std::optional<double> Hnu;
};

/// Fills frame.nu and frame.orientation_sign (dim 4) as a side effect.
CurvatureData curvature_data(AdaptedFrame& frame, const PointJets& pj, const SecondForm& sf, const FirstForm& ff,
                             double tol = 1e-9);

/// Everything known at one chart point.
struct PointGeometry {
  ChartPoint pt;
  PointJets pj;
  FirstForm ff;
  AdaptedFrame frame;
  SecondForm sf;
  CurvatureData cd;
};

/// Throws DegenerateMetricError at non-timelike points and FrameError when
/// there is no canonical null direction.
PointGeometry analyze_point(const SurfaceDef& def, ChartPoint pt, double tol = 1e-9);

}  // namespace nullgeo
