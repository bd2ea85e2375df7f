#include "nullgeo/gauss.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr double kMetric[6] = {-1, -1, -1, 1, 1, 1};

// wedge4 as a symmetric bilinear form: Omega[k][j].
constexpr double omega(int k, int j) {
  if ((k == 0 && j == 5) || (k == 5 && j == 0)) return 1.0;
  if ((k == 1 && j == 4) || (k == 4 && j == 1)) return -1.0;
  if ((k == 2 && j == 3) || (k == 3 && j == 2)) return 1.0;
  return 0.0;
}

}  // namespace

Bivector Bivector::basis(int k) {
  Bivector b;
  b[k] = 1.0;
  return b;
}

Bivector& Bivector::operator+=(const Bivector& o) {
  for (int k = 0; k < 6; ++k) (*this)[k] += o[k];
  return *this;
}

Bivector& Bivector::operator-=(const Bivector& o) {
  for (int k = 0; k < 6; ++k) (*this)[k] -= o[k];
  return *this;
}

Bivector& Bivector::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

double Bivector::max_abs() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

Bivector wedge(const MinkVec& u, const MinkVec& v) {
  if (u.dim() != 4 || v.dim() != 4) throw UsageError("wedge needs dim-4 vectors");
  Bivector b;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    b[k] = u[i] * v[j] - u[j] * v[i];
  }
  return b;
}

double lambda2_inner(const Bivector& a, const Bivector& b) {
  double s = 0.0;
  for (int k = 0; k < 6; ++k) s += kMetric[k] * a[k] * b[k];
  return s;
}

double wedge4(const Bivector& a, const Bivector& b, int orientation) {
  double s = 0.0;
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j < 6; ++j) s += omega(k, j) * a[k] * b[j];
  return orientation * s;
}

Bivector star(const Bivector& a, int orientation) {
  Bivector out;
  for (int k = 0; k < 6; ++k) {
    double s = 0.0;
    for (int j = 0; j < 6; ++j) s += omega(k, j) * a[j];
    out[k] = orientation * s / kMetric[k];
  }
  return out;
}

Bivector cpx_mul_i(const Bivector& a, int orientation) { return -star(a, orientation); }

Bivector cpx_scale(std::complex<double> z, const Bivector& a, int orientation) {
  return z.real() * a + z.imag() * cpx_mul_i(a, orientation);
}

std::complex<double> h_form(const Bivector& a, const Bivector& b, int orientation) {
  return {lambda2_inner(a, b), wedge4(a, b, orientation)};
}

double star_squared_residual() {
  double worst = 0.0;
  for (int k = 0; k < 6; ++k) {
    const Bivector e = Bivector::basis(k);
    worst = std::max(worst, (star(star(e)) + e).max_abs());
  }
  return worst;
}

const PointGeometry& require_gauss_point(const PointGeometry& g) {
  if (g.pj.px.dim() != 4) throw UnsupportedPointError("gauss map needs a surface in R^{3,1}");
  if (!g.frame.nu) throw UnsupportedPointError("II(Zt,Zt) = 0 at the point (ruled); nu is undefined");
  return g;
}

Bivector gauss_map(const PointGeometry& g) {
  require_gauss_point(g);
  return wedge(g.frame.W.ambient, g.frame.Zt.ambient);
}

Bivector gauss_map_chart(const PointGeometry& g) {
  require_gauss_point(g);
  const TangentVec& W = g.frame.W;
  const TangentVec& Zt = g.frame.Zt;
  const double s = (W.p * Zt.q - W.q * Zt.p) < 0.0 ? -1.0 : 1.0;
  return (s / std::sqrt(g.ff.F * g.ff.F - g.ff.E * g.ff.G)) * wedge(g.pj.px, g.pj.py);
}

NPair n1n2(const PointGeometry& g) {
  require_gauss_point(g);
  return {wedge(g.frame.Zperp, g.frame.W.ambient), wedge(g.frame.Zperp, g.frame.Zt.ambient)};
}

namespace {

// X = alpha Zt + beta W.
std::pair<double, double> null_coords(const PointGeometry& g, const TangentVec& X) {
  return {-mink_inner(X.ambient, g.frame.W.ambient), -mink_inner(X.ambient, g.frame.Zt.ambient)};
}

}  // namespace

Bivector dgauss_formula(const PointGeometry& g, const TangentVec& X) {
  require_gauss_point(g);
  const MinkVec& zt = g.frame.Zt.ambient;
  const MinkVec& w = g.frame.W.ambient;
  const CurvatureData& cd = g.cd;
  const Bivector dz = -wedge(cd.H, zt) + wedge(w, cd.IIZZ);
  const Bivector dw = wedge(cd.H, w) - wedge(zt, cd.IIWW);
  const auto [alpha, beta] = null_coords(g, X);
  return alpha * dz + beta * dw;
}

Bivector dgauss_formula_n(const PointGeometry& g, const TangentVec& X) {
  const NPair n = n1n2(g);
  const int s = g.frame.orientation_sign;
  const CurvatureData& cd = g.cd;
  const double hnu = *cd.Hnu;
  const double m = cd.IIZZ_norm;
  using C = std::complex<double>;
  const Bivector dz = cpx_scale(C(0.0, m), n.N1, s) + cpx_scale(C(0.0, -hnu), n.N2, s);
  const Bivector dw =
      cpx_scale(C(0.0, -hnu), n.N1, s) + cpx_scale(C(cd.KN, mink_norm2(cd.H) - cd.K) / m, n.N2, s);
  const auto [alpha, beta] = null_coords(g, X);
  return alpha * dz + beta * dw;
}

Bivector dgauss_fd(const SurfaceDef& def, const PointGeometry& g, const TangentVec& X, const FdOptions& fd) {
  require_gauss_point(g);
  auto field = [&def](ChartPoint p) { return gauss_map(analyze_point(def, p)); };
  return fd_central<Bivector>(field, g.pt, X.p, X.q, fd);
}

Bivector dgauss(const SurfaceDef& def, ChartPoint pt, const TangentVec& X, DgRoute route, const FdOptions& fd) {
  const PointGeometry g = analyze_point(def, pt);
  return route == DgRoute::formula ? dgauss_formula(g, X) : dgauss_fd(def, g, X, fd);
}

CpxQuadForm pullback_gh(const PointGeometry& g, double c) {
  const int s = g.frame.orientation_sign;
  const Bivector dz = c * dgauss_formula(g, g.frame.Zt);
  const Bivector dw = (1.0 / c) * dgauss_formula(g, g.frame.W);
  return {h_form(dz, dz, s), h_form(dz, dw, s), h_form(dw, dw, s)};
}

CpxQuadForm pullback_gh_closed(const PointGeometry& g, double c) {
  require_gauss_point(g);
  const CurvatureData& cd = g.cd;
  const double hnu = *cd.Hnu;
  const double m = cd.IIZZ_norm;
  const double h2 = mink_norm2(cd.H);
  using C = std::complex<double>;
  CpxQuadForm q;
  q.zz = c * c * C(-2.0 * m * hnu, 0.0);
  q.ww = (1.0 / (c * c)) * (-2.0 * hnu * C(h2 - cd.K, -cd.KN) / m);
  q.zw = C(2.0 * h2 - cd.K, -cd.KN);
  return q;
}

std::complex<double> pullback_disc(const CpxQuadForm& q) { return q.zz * q.ww - q.zw * q.zw; }

DeltaData delta_and_Delta(const PointGeometry& g, const CpxQuadForm& q) {
  const NPair n = n1n2(g);
  const int s = g.frame.orientation_sign;
  const double vol = -wedge4(cpx_mul_i(n.N1, s), n.N2, s);
  DeltaData d;
  d.zz = q.zz.imag() / vol;
  d.zw = q.zw.imag() / vol;
  d.ww = q.ww.imag() / vol;
  d.Delta = d.zz * d.ww - d.zw * d.zw;
  return d;
}

AsymptoticDirections asymptotic_directions(const PointGeometry& g, const DeltaData& d, double c, double tol) {
  AsymptoticDirections out;
  if (std::abs(d.zz) <= tol && std::abs(d.zw) <= tol && std::abs(d.ww) <= tol) {
    out.all = true;
    return out;
  }
  const TangentVec& Zt = g.frame.Zt;
  const TangentVec& W = g.frame.W;
  out.directions.push_back(Zt);
  if (std::abs(d.zw) > tol) {
    // delta(c Zt + t W/c) = 2t dzw + t^2 dww with dzz = 0; second root in
    // the form s' (c Zt) + W/c, rescaled so W has coefficient one.
    const double s = -d.ww / (2.0 * d.zw) * c * c;
    out.directions.push_back(make_tangent(s * Zt.p + W.p, s * Zt.q + W.q, g.pj));
  }
  return out;
}

Fragment gauss_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd) {
  Fragment out;
  const PointGeometry g = analyze_point(def, pt, t.frame);
  if (def.dim != 4) return out;
  if (!g.frame.nu) {
    out.note("gauss-map suite skipped: II(Zt,Zt) = 0");
    return out;
  }
  const int s = g.frame.orientation_sign;
  const Bivector G = gauss_map(g);
  const NPair n = n1n2(g);
  const MinkVec& nu = *g.frame.nu;
  const MinkVec& zt = g.frame.Zt.ambient;
  const MinkVec& w = g.frame.W.ambient;

  out.add("HGG", "H(G,G) = -1", std::abs(h_form(G, G, s) + 1.0), t.frame);
  out.add("G_simple", "G ^ G = 0", std::abs(wedge4(G, G)), t.frame);
  out.add("G_chart_form", "W ^ Zt = s (psi_x ^ psi_y) / sqrt(F^2 - EG)", (G - gauss_map_chart(g)).max_abs(),
          t.frame);
  const double hn = std::max({std::abs(h_form(n.N1, n.N1, s)), std::abs(h_form(n.N2, n.N2, s)),
                              std::abs(h_form(n.N1, n.N2, s) + 1.0)});
  out.add("HN1N2", "H(N1,N1) = H(N2,N2) = 0, H(N1,N2) = -1", hn, t.frame);
  const double in = std::max((cpx_mul_i(n.N1, s) - wedge(w, nu)).max_abs(),
                             (cpx_mul_i(n.N2, s) + wedge(zt, nu)).max_abs());
  out.add("iN_identities", "i N1 = W ^ nu, i N2 = -Zt ^ nu", in, t.frame);
  out.add("volume_element", "-(i N1) ^ N2 = 1", std::abs(-wedge4(cpx_mul_i(n.N1, s), n.N2, s) - 1.0), t.frame);

  double wedge_vs_n = 0.0, formula_vs_fd = 0.0;
  Bivector dfd[2];
  int k = 0;
  for (const TangentVec* X : {&g.frame.Zt, &g.frame.W}) {
    const Bivector f = dgauss_formula(g, *X);
    wedge_vs_n = std::max(wedge_vs_n, (f - dgauss_formula_n(g, *X)).max_abs());
    dfd[k] = dgauss_fd(def, g, *X, fd);
    formula_vs_fd = std::max(formula_vs_fd, (f - dfd[k]).max_abs());
    ++k;
  }
  out.add("dG_wedge_vs_N", "dG wedge form = dG N1/N2 form on Zt, W", wedge_vs_n, t.frame);
  out.add("dG_formula_vs_fd", "dG closed form = FD of G on Zt, W", formula_vs_fd, t.dg_fd);

  const CpxQuadForm q = pullback_gh(g);
  const CpxQuadForm qc = pullback_gh_closed(g);
  const double pb = std::max({std::abs(q.zz - qc.zz), std::abs(q.zw - qc.zw), std::abs(q.ww - qc.ww)});
  out.add("pullback_closed_form", "G*H entries = closed forms in |II(Zt,Zt)|, <H,nu>, K, KN", pb, t.pullback);
  const CpxQuadForm qf{h_form(dfd[0], dfd[0], s), h_form(dfd[0], dfd[1], s), h_form(dfd[1], dfd[1], s)};
  const double pbf = std::max({std::abs(qf.zz - qc.zz), std::abs(qf.zw - qc.zw), std::abs(qf.ww - qc.ww)});
  out.add("pullback_fd", "G*H from FD dG = closed forms", pbf, t.dg_fd);

  const Bivector dsum = dgauss_formula(g, make_tangent(g.frame.Zt.p + g.frame.W.p, g.frame.Zt.q + g.frame.W.q, g.pj));
  const std::complex<double> polar = 0.5 * (h_form(dsum, dsum, s) - q.zz - q.ww);
  out.add("pullback_polarization", "q(Zt,W) = (q(Zt+W) - q(Zt) - q(W)) / 2", std::abs(polar - q.zw), t.frame);

  const std::complex<double> kk(g.cd.K, g.cd.KN);
  out.add("disc_identity", "q_ZZ q_WW - q_ZW^2 = -(K + i KN)^2", std::abs(pullback_disc(q) + kk * kk), t.pullback);

  const DeltaData d = delta_and_Delta(g, q);
  out.add("Delta_identity", "Δ = -KN^2", std::abs(d.Delta + g.cd.KN * g.cd.KN), t.pullback);
  out.add("Zt_asymptotic", "δ(Zt) = 0", std::abs(d.zz), t.frame);

  const double hnu = *g.cd.Hnu;
  const AsymptoticDirections ad = asymptotic_directions(g, d, 1.0, t.frame);
  const bool w_listed = ad.all || (ad.directions.size() == 2 && std::abs(ad.directions[1].p - g.frame.W.p) +
                                                                          std::abs(ad.directions[1].q - g.frame.W.q) <=
                                                                      t.pullback * (1.0 + std::abs(g.frame.W.p) + std::abs(g.frame.W.q)));
  const bool w_expected = std::abs(hnu * g.cd.KN) <= t.pullback;
  out.add("W_asymptotic_iff", "W asymptotic iff <H,nu> KN = 0", w_listed == w_expected ? 0.0 : 1.0, 0.0);
  if (ad.directions.size() == 2) {
    const double sc = hnu / g.cd.IIZZ_norm;
    const TangentVec expect = make_tangent(sc * g.frame.Zt.p + g.frame.W.p, sc * g.frame.Zt.q + g.frame.W.q, g.pj);
    out.add("second_asymptotic", "second asymptotic direction = (<H,nu>/|II(Zt,Zt)|) Zt + W",
            (ad.directions[1].ambient - expect.ambient).euclid_norm(), t.pullback);
  }

  out.observe("Delta", d.Delta);
  out.observe("GH_max", std::max({std::abs(q.zz), std::abs(q.zw), std::abs(q.ww)}));
  out.observe("Hnu_KN", std::abs(hnu * g.cd.KN));
  out.add("KN_ricci", "KN = a |II(Zt,Zt)| = <R⊥(Zt,W) Z⊥, nu>", std::abs(g.cd.KN - normal_curvature_ricci(def, pt, fd, t.frame)),
          t.second_fd);
  if (s < 0) out.note("adapted frame is negatively oriented; volume identification flipped");
  return out;
}

}  // namespace nullgeo
