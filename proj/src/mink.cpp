#include "nullgeo/mink.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

void check_dim(int dim) {
  if (dim != 3 && dim != 4) throw UsageError("MinkVec dimension must be 3 or 4, got " + std::to_string(dim));
}

void check_same(const MinkVec& a, const MinkVec& b) {
  if (a.dim() != b.dim()) {
    throw UsageError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

MinkVec::MinkVec(int dim) : dim_(dim) { check_dim(dim); }

MinkVec::MinkVec(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

MinkVec MinkVec::basis(int dim, int index) {
  MinkVec v(dim);
  if (index < 0 || index >= dim) throw UsageError("basis index out of range");
  v[index] = 1.0;
  return v;
}

MinkVec& MinkVec::operator+=(const MinkVec& o) {
  check_same(*this, o);
  for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

MinkVec& MinkVec::operator-=(const MinkVec& o) {
  check_same(*this, o);
  for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

MinkVec& MinkVec::operator*=(double s) {
  for (int i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

double MinkVec::euclid_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
  return std::sqrt(s);
}

double MinkVec::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

std::string MinkVec::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int i = 0; i < dim_; ++i) os << (i ? ", " : "") << c_[i];
  os << ')';
  return os.str();
}

double mink_inner(const MinkVec& u, const MinkVec& v) {
  check_same(u, v);
  double s = -u[0] * v[0];
  for (int i = 1; i < u.dim(); ++i) s += u[i] * v[i];
  return s;
}

double mink_norm2(const MinkVec& u) { return mink_inner(u, u); }

const char* to_string(CausalTag tag) {
  switch (tag) {
    case CausalTag::timelike: return "timelike";
    case CausalTag::spacelike: return "spacelike";
    case CausalTag::lightlike: return "lightlike";
  }
  return "?";
}

CausalClass causal_classify(const MinkVec& u, double tol) {
  const double e = u.euclid_norm();
  if (!(e > 0.0)) throw DegenerateInputError("causal_classify: zero vector");
  const double q = mink_norm2(u);
  if (std::abs(q) <= tol * e * e) return {CausalTag::lightlike, q};
  return {q < 0.0 ? CausalTag::timelike : CausalTag::spacelike, q};
}

Solve2 gram_solve2(double g00, double g01, double g11, double r0, double r1, double eps_det) {
  const double det = g00 * g11 - g01 * g01;
  const double scale = std::max({std::abs(g00), std::abs(g01), std::abs(g11)});
  if (!(std::abs(det) > eps_det * scale * scale) || scale == 0.0) {
    throw DegenerateMetricError("gram_solve2: near-singular Gram matrix (det = " + std::to_string(det) + ")");
  }
  return {(g11 * r0 - g01 * r1) / det, (g00 * r1 - g01 * r0) / det};
}

NormalBasis normal_complement(const MinkVec& t1, const MinkVec& t2, double tol) {
  check_same(t1, t2);
  const int dim = t1.dim();
  const double E = mink_inner(t1, t1);
  const double F = mink_inner(t1, t2);
  const double G = mink_inner(t2, t2);
  const double scale = std::max(t1.euclid_norm(), t2.euclid_norm());
  if (!(E * G - F * F < -1e-12 * std::pow(scale, 4))) {
    throw DegenerateMetricError("normal_complement: tangent plane is not timelike");
  }
  auto strip_tangent = [&](MinkVec v) {
    const Solve2 s = gram_solve2(E, F, G, mink_inner(v, t1), mink_inner(v, t2));
    return v - s.a * t1 - s.b * t2;
  };

  const int needed = dim - 2;
  MinkVec found[2];
  int count = 0;
  // A candidate whose normal residual is this small is treated as dependent.
  constexpr double kDependent = 1e-3;
  for (int k = 0; k < dim && count < needed; ++k) {
    MinkVec c = strip_tangent(MinkVec::basis(dim, k));
    for (int j = 0; j < count; ++j) c -= mink_inner(c, found[j]) * found[j];
    const double q = mink_norm2(c);
    if (q <= kDependent) continue;
    c = c / std::sqrt(q);
    // second pass restores orthogonality lost to cancellation
    c = strip_tangent(c);
    for (int j = 0; j < count; ++j) c -= mink_inner(c, found[j]) * found[j];
    c = c / std::sqrt(mink_norm2(c));
    for (int i = 0; i < dim; ++i) {
      if (std::abs(c[i]) > 1e-12) {
        if (c[i] < 0) c *= -1.0;
        break;
      }
    }
    found[count++] = c;
  }
  if (count < needed) throw DegenerateMetricError("normal_complement: could not complete normal basis");

  for (int i = 0; i < count; ++i) {
    const double r = std::max({std::abs(mink_inner(found[i], t1)) / scale,
                               std::abs(mink_inner(found[i], t2)) / scale,
                               std::abs(mink_norm2(found[i]) - 1.0)});
    if (r > tol) throw DegenerateMetricError("normal_complement: orthonormality residual " + std::to_string(r));
  }
  NormalBasis out{found[0], std::nullopt};
  if (needed == 2) out.n2 = found[1];
  return out;
}

double det4(const MinkVec& c0, const MinkVec& c1, const MinkVec& c2, const MinkVec& c3) {
  const MinkVec* cols[4] = {&c0, &c1, &c2, &c3};
  for (auto* c : cols) {
    if (c->dim() != 4) throw UsageError("det4 needs dim-4 vectors");
  }
  double m[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = (*cols[c])[r];
  // Laplace expansion via 2x2 minors of the first two rows.
  const double s0 = m[0][0] * m[1][1] - m[1][0] * m[0][1];
  const double s1 = m[0][0] * m[1][2] - m[1][0] * m[0][2];
  const double s2 = m[0][0] * m[1][3] - m[1][0] * m[0][3];
  const double s3 = m[0][1] * m[1][2] - m[1][1] * m[0][2];
  const double s4 = m[0][1] * m[1][3] - m[1][1] * m[0][3];
  const double s5 = m[0][2] * m[1][3] - m[1][2] * m[0][3];
  const double k5 = m[2][2] * m[3][3] - m[3][2] * m[2][3];
  const double k4 = m[2][1] * m[3][3] - m[3][1] * m[2][3];
  const double k3 = m[2][1] * m[3][2] - m[3][1] * m[2][2];
  const double k2 = m[2][0] * m[3][3] - m[3][0] * m[2][3];
  const double k1 = m[2][0] * m[3][2] - m[3][0] * m[2][2];
  const double k0 = m[2][0] * m[3][1] - m[3][0] * m[2][1];
  return s0 * k5 - s1 * k4 + s2 * k3 + s3 * k2 - s4 * k1 + s5 * k0;
}

}  // namespace nullgeo
