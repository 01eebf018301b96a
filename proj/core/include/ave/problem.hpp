#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace ave {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dimension mismatches and violated solver shape preconditions (square, B = -I, ...).
struct BadShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its hard cap.
struct SizeCap : std::length_error {
  using std::length_error::length_error;
};

// Malformed problem or campaign-config files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The right-hand side lies outside the range of the affine constraint map,
// so the affine piece of the feasibility problem is empty.
struct InfeasibleAffine : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A linear system required by a step is numerically singular.
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The absolute value equation A x + B |x| = c with A, B in R^{m x n}.
struct AveProblem {
  Matrix A;
  Matrix B;
  Vector c;

  Index rows() const { return A.rows(); }
  Index cols() const { return A.cols(); }
};

// Validates shapes and finiteness; throws BadShape.
AveProblem make_problem(Matrix A, Matrix B, Vector c);

// Euclidean residual ||A x + B |x| - c||.
double residual(const AveProblem& p, const Vector& x);

}  // namespace ave
