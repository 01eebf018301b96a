#pragma once

#include <cmath>

#include "ave/problem.hpp"

// The doubled-variable formulation. A solution x of A x + B |x| = c
// corresponds to the split point w = (u, v) with u = sqrt(2) x_+ and
// v = sqrt(2) x_-, which lies in the intersection of
//   C1 = { w : T w = sqrt(2) c },  T = [A+B | B-A],
//   C2 = { (u, v) : u >= 0, v >= 0, <u, v> = 0 }.

namespace ave {

struct SplitPoint {
  Vector u;
  Vector v;

  Index size() const { return u.size(); }
  double squaredNorm() const { return u.squaredNorm() + v.squaredNorm(); }
  double norm() const { return std::sqrt(squaredNorm()); }

  static SplitPoint Zero(Index n) { return {Vector::Zero(n), Vector::Zero(n)}; }
};

inline SplitPoint operator+(const SplitPoint& a, const SplitPoint& b) {
  return {a.u + b.u, a.v + b.v};
}
inline SplitPoint operator-(const SplitPoint& a, const SplitPoint& b) {
  return {a.u - b.u, a.v - b.v};
}
inline SplitPoint operator*(double s, const SplitPoint& w) {
  return {s * w.u, s * w.v};
}
inline double dot(const SplitPoint& a, const SplitPoint& b) {
  return a.u.dot(b.u) + a.v.dot(b.v);
}
inline double distance(const SplitPoint& a, const SplitPoint& b) {
  return (a - b).norm();
}

SplitPoint to_split(const Vector& x);
Vector from_split(const SplitPoint& w);

// Immutable description of C1 plus the factorizations needed to project onto
// it. The Gram matrix T T^T = 2 (A A^T + B B^T) is Cholesky-factorized when it
// is numerically SPD; otherwise a truncated SVD of T serves as pseudo-inverse
// (this also covers m >= 2n, where T T^T is always singular).
class SplitSpace {
 public:
  explicit SplitSpace(const AveProblem& p);

  Index m() const { return m_; }
  Index n() const { return n_; }
  const Matrix& t_left() const { return ta_; }   // A + B
  const Matrix& t_right() const { return tb_; }  // B - A
  const Vector& rhs() const { return rhs_; }     // sqrt(2) c
  double c_norm() const { return c_norm_; }
  bool rank_deficient() const { return use_svd_; }

  // Minimum-norm point of C1, sqrt(2) T^+ c.
  const SplitPoint& particular() const { return particular_; }

  Vector apply(const SplitPoint& w) const;           // T w
  SplitPoint apply_adjoint(const Vector& z) const;   // T^T z
  SplitPoint least_squares(const Vector& r) const;   // T^+ r

  Matrix dense_t() const;            // [A+B | B-A], m x 2n
  Matrix kernel_projector() const;   // L = I - T^+ T, 2n x 2n

 private:
  Index m_ = 0;
  Index n_ = 0;
  Matrix ta_;
  Matrix tb_;
  Vector rhs_;
  double c_norm_ = 0;
  bool use_svd_ = false;
  Eigen::LLT<Matrix> llt_;
  Matrix svd_u_;     // m x r
  Vector svd_sigma_; // r
  Matrix svd_v_;     // 2n x r
  SplitPoint particular_;
};

// Throws InfeasibleAffine when c is outside the range of T beyond tolerance.
SplitSpace build_split_space(const AveProblem& p);

}  // namespace ave
