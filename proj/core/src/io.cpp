#include "ave/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

namespace ave {

void write_problem(std::ostream& os, const AveProblem& p) {
  const Index m = p.rows(), n = p.cols();
  os << "AVE " << m << ' ' << n << '\n';
  os << std::setprecision(17);  // round-trip exact for doubles
  const auto write_block = [&](const Matrix& mat) {
    for (Index i = 0; i < mat.rows(); ++i) {
      for (Index j = 0; j < mat.cols(); ++j)
        os << (j ? " " : "") << mat(i, j);
      os << '\n';
    }
  };
  write_block(p.A);
  write_block(p.B);
  for (Index i = 0; i < m; ++i) os << (i ? " " : "") << p.c(i);
  os << '\n';
}

void write_problem_file(const std::string& path, const AveProblem& p) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open for writing: " + path);
  write_problem(os, p);
  if (!os) throw ParseError("write failed: " + path);
}

AveProblem read_problem(std::istream& is) {
  std::string magic;
  if (!(is >> magic) || magic != "AVE")
    throw ParseError("expected 'AVE m n' header");
  long long m = 0, n = 0;
  if (!(is >> m >> n) || m < 1 || n < 1 || m > 1000000 || n > 1000000)
    throw ParseError("bad dimensions in header");
  const auto read_block = [&](Index rows, Index cols, const char* what) {
    Matrix mat(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        if (!(is >> mat(i, j)))
          throw ParseError(std::string("truncated or non-numeric ") + what);
    return mat;
  };
  Matrix A = read_block(m, n, "A block");
  Matrix B = read_block(m, n, "B block");
  Vector c(m);
  for (Index i = 0; i < m; ++i)
    if (!(is >> c(i)))
      throw ParseError("truncated or non-numeric right-hand side");
  try {
    return make_problem(std::move(A), std::move(B), std::move(c));
  } catch (const BadShape& e) {
    throw ParseError(e.what());
  }
}

AveProblem read_problem_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  return read_problem(is);
}

}  // namespace ave
