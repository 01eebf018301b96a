#include "ave/generators.hpp"

#include <cmath>

namespace ave {

namespace {

Matrix draw_matrix_uniform(Index rows, Index cols, double a, double b,
                           Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)       // row-major draw order
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(a, b);
  return m;
}

Matrix draw_matrix_normal(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Vector draw_vector_normal(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

void check_size(int n, const char* who) {
  if (n < 1) throw BadShape(std::string(who) + " needs size >= 1");
}

}  // namespace

const char* to_string(GenFamily f) {
  switch (f) {
    case GenFamily::Uniform: return "uniform";
    case GenFamily::PsdGram: return "psd-gram";
    case GenFamily::GaussianRect: return "gaussian-rect";
  }
  return "?";
}

GeneratedInstance gen_example1(int n, int alpha, Rng& rng) {
  check_size(n, "uniform family");
  if (alpha < 0 || alpha > 3) throw BadShape("alpha must be in {0,1,2,3}");
  Matrix a_raw;
  double smin = 0;
  do {
    a_raw = draw_matrix_uniform(n, n, -10.0, 10.0, rng);
    smin = Eigen::BDCSVD<Matrix>(a_raw).singularValues().minCoeff();
  } while (smin < 1e-12);
  double t = rng.uniform01();
  while (t < 1e-6) t = rng.uniform01();
  // sigma_min(A) = 1/t >= 1 = sigma_max(-I), strict for t < 1.
  Matrix A = a_raw / (t * smin);
  Matrix B = -Matrix::Identity(n, n);
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    const double r = rng.uniform(-1.0, 1.0);
    const double s = rng.uniform01();
    x(i) = r * std::pow(10.0, alpha * s);
  }
  Vector c = A * x + B * x.cwiseAbs();
  return {make_problem(std::move(A), std::move(B), std::move(c)), std::move(x),
          {GenFamily::Uniform, alpha, true}};
}

GeneratedInstance gen_example1(int n, int alpha, std::uint64_t seed) {
  Rng rng(seed);
  return gen_example1(n, alpha, rng);
}

GeneratedInstance gen_example2(int n, Rng& rng) {
  check_size(n, "psd-gram family");
  Matrix a_raw = draw_matrix_normal(n, n, rng);
  Matrix A = a_raw.transpose() * a_raw;
  Matrix B = -Matrix::Identity(n, n);
  Vector x = draw_vector_normal(n, rng);
  Vector c = A * x + B * x.cwiseAbs();
  return {make_problem(std::move(A), std::move(B), std::move(c)), std::move(x),
          {GenFamily::PsdGram, 0, false}};
}

GeneratedInstance gen_example2(int n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_example2(n, rng);
}

GeneratedInstance gen_example3(int m, int n, Rng& rng) {
  check_size(n, "gaussian-rect family");
  check_size(m, "gaussian-rect family");
  Matrix A = draw_matrix_normal(m, n, rng);
  Matrix B = draw_matrix_normal(m, n, rng);
  Vector x = draw_vector_normal(n, rng);
  Vector c = A * x + B * x.cwiseAbs();
  return {make_problem(std::move(A), std::move(B), std::move(c)), std::move(x),
          {GenFamily::GaussianRect, 0, false}};
}

GeneratedInstance gen_example3(int m, int n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_example3(m, n, rng);
}

GeneratedInstance make_instance(const GenSpec& spec, std::uint64_t trial) {
  Rng rng = Rng::stream(spec.seed, trial);
  switch (spec.family) {
    case GenFamily::Uniform:
      return gen_example1(spec.n, spec.alpha, rng);
    case GenFamily::PsdGram:
      return gen_example2(spec.n, rng);
    case GenFamily::GaussianRect:
      return gen_example3(spec.m > 0 ? spec.m : spec.n, spec.n, rng);
  }
  throw BadShape("unknown generator family");
}

}  // namespace ave
