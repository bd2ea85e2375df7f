#pragma once

// Minkowski linear algebra on R^{n,1}, n = 2 or 3. The first coordinate is
// timelike: <u,v> = -u1 v1 + u2 v2 + ... + u_{n+1} v_{n+1}.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>

namespace nullgeo {

class MinkVec {
 public:
  static constexpr int kMaxDim = 4;

  MinkVec() = default;
  explicit MinkVec(int dim);
  MinkVec(std::initializer_list<double> coords);

  static MinkVec basis(int dim, int index);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  MinkVec& operator+=(const MinkVec& o);
  MinkVec& operator-=(const MinkVec& o);
  MinkVec& operator*=(double s);

  friend MinkVec operator+(MinkVec a, const MinkVec& b) { return a += b; }
  friend MinkVec operator-(MinkVec a, const MinkVec& b) { return a -= b; }
  friend MinkVec operator*(double s, MinkVec a) { return a *= s; }
  friend MinkVec operator*(MinkVec a, double s) { return a *= s; }
  friend MinkVec operator/(MinkVec a, double s) { return a *= 1.0 / s; }
  friend MinkVec operator-(MinkVec a) { return a *= -1.0; }

  double euclid_norm() const;
  double max_abs() const;
  std::string str() const;

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> c_{};
};

double mink_inner(const MinkVec& u, const MinkVec& v);
double mink_norm2(const MinkVec& u);

enum class CausalTag { timelike, spacelike, lightlike };

struct CausalClass {
  CausalTag tag;
  double value;  // <u,u>
};

const char* to_string(CausalTag tag);

/// Lightlike iff |<u,u>| <= tol * |u|_euclid^2.
CausalClass causal_classify(const MinkVec& u, double tol);

struct Solve2 {
  double a;
  double b;
};

/// Solves [[g00,g01],[g01,g11]] (a,b)^T = (r0,r1)^T. Throws
/// DegenerateMetricError when |det| <= eps_det * max|g|^2.
Solve2 gram_solve2(double g00, double g01, double g11, double r0, double r1,
                   double eps_det = 1e-12);

struct NormalBasis {
  MinkVec n1;
  std::optional<MinkVec> n2;  // present in dim 4
};

/// Minkowski-orthonormal spacelike basis of the orthogonal complement of the
/// timelike plane span(t1,t2). Seeded by Gram-Schmidt over e1..e_dim in
/// index order; each vector's first nonzero coordinate is positive.
NormalBasis normal_complement(const MinkVec& t1, const MinkVec& t2, double tol = 1e-9);

/// Determinant of the 4x4 matrix with the given columns.
double det4(const MinkVec& c0, const MinkVec& c1, const MinkVec& c2, const MinkVec& c3);

}  // namespace nullgeo
