#include "ave/split.hpp"

#include <cmath>
#include <utility>

#include "ave/constants.hpp"

namespace ave {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

SplitPoint to_split(const Vector& x) {
  // u = sqrt(2) x_+, v = sqrt(2) x_-; then |u - v| / sqrt(2) recovers |x| and
  // the doubled coordinates keep distances: ||w - w'|| = sqrt(2) ||x - x'||
  // on the image of this map.
  const Vector ax = x.cwiseAbs();
  return {(ax + x) / kSqrt2, (ax - x) / kSqrt2};
}

Vector from_split(const SplitPoint& w) {
  return (w.u - w.v) / kSqrt2;
}

SplitSpace::SplitSpace(const AveProblem& p)
    : m_(p.rows()),
      n_(p.cols()),
      ta_(p.A + p.B),
      tb_(p.B - p.A),
      rhs_(kSqrt2 * p.c),
      c_norm_(p.c.norm()) {
  // T T^T = (A+B)(A+B)^T + (B-A)(B-A)^T = 2 (A A^T + B B^T).
  const Matrix gram = 2.0 * (p.A * p.A.transpose() + p.B * p.B.transpose());
  llt_.compute(gram);
  use_svd_ = llt_.info() != Eigen::Success || llt_.rcond() < tol::rcond_min;
  if (use_svd_) {
    Eigen::BDCSVD<Matrix> svd(dense_t(),
                              Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? tol::svd_truncation * sigma(0) : 0;
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff) ++r;
    svd_u_ = svd.matrixU().leftCols(r);
    svd_sigma_ = sigma.head(r);
    svd_v_ = svd.matrixV().leftCols(r);
  }
  particular_ = least_squares(rhs_);
  const double gap = (apply(particular_) - rhs_).norm();
  if (gap > tol::affine_tol * (1.0 + c_norm_))
    throw InfeasibleAffine("right-hand side is not in the range of the constraint map");
}

Vector SplitSpace::apply(const SplitPoint& w) const {
  return ta_ * w.u + tb_ * w.v;
}

SplitPoint SplitSpace::apply_adjoint(const Vector& z) const {
  return {ta_.transpose() * z, tb_.transpose() * z};
}

SplitPoint SplitSpace::least_squares(const Vector& r) const {
  if (!use_svd_) return apply_adjoint(llt_.solve(r));
  const Vector y = svd_v_ * (svd_u_.transpose() * r).cwiseQuotient(svd_sigma_);
  return {y.head(n_), y.tail(n_)};
}

Matrix SplitSpace::dense_t() const {
  Matrix t(m_, 2 * n_);
  t << ta_, tb_;
  return t;
}

Matrix SplitSpace::kernel_projector() const {
  const Index d = 2 * n_;
  if (use_svd_)
    return Matrix::Identity(d, d) - svd_v_ * svd_v_.transpose();
  const Matrix t = dense_t();
  return Matrix::Identity(d, d) - t.transpose() * llt_.solve(t);
}

SplitSpace build_split_space(const AveProblem& p) { return SplitSpace(p); }

}  // namespace ave
