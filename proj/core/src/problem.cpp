#include "ave/problem.hpp"

namespace ave {

AveProblem make_problem(Matrix A, Matrix B, Vector c) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw BadShape("A and B must have identical dimensions");
  if (c.size() != A.rows())
    throw BadShape("c must have one entry per row of A");
  if (A.rows() == 0 || A.cols() == 0)
    throw BadShape("empty problem");
  if (!A.allFinite() || !B.allFinite() || !c.allFinite())
    throw BadShape("problem data must be finite");
  return AveProblem{std::move(A), std::move(B), std::move(c)};
}

double residual(const AveProblem& p, const Vector& x) {
  if (x.size() != p.cols()) throw BadShape("x has wrong dimension");
  return (p.A * x + p.B * x.cwiseAbs() - p.c).norm();
}

}  // namespace ave
