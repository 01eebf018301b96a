#include "ave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ave {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

// Threshold below which a principal minor of order k counts as zero; scaled
// by the submatrix magnitude so large well-conditioned minors are not
// misjudged against an absolute cutoff.
double minor_cutoff(const Matrix& sub) {
  const double maxabs = sub.cwiseAbs().maxCoeff();
  return tol::minor_threshold *
         std::max(1.0, std::pow(maxabs, static_cast<double>(sub.rows())));
}

enum class MinorTest { Nonzero, Positive };

TriState scan_minors(const Matrix& Q, int cap, MinorTest test) {
  const Index n = Q.rows();
  if (Q.cols() != n) throw BadShape("principal minors need a square matrix");
  if (n > cap) return TriState::Skipped;
  std::vector<Index> idx;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    idx.clear();
    for (Index i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    const Index k = static_cast<Index>(idx.size());
    Matrix sub(k, k);
    for (Index r = 0; r < k; ++r)
      for (Index c = 0; c < k; ++c) sub(r, c) = Q(idx[r], idx[c]);
    const double det = sub.determinant();
    const double cut = minor_cutoff(sub);
    if (test == MinorTest::Nonzero ? std::abs(det) <= cut : det <= cut)
      return TriState::No;
  }
  return TriState::Yes;
}

}  // namespace

const char* to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Skipped: return "skipped";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Solution: return "Solution";
    case Verdict::SpuriousFixedPoint: return "SpuriousFixedPoint";
    case Verdict::NotFixed: return "NotFixed";
  }
  return "?";
}

std::optional<Matrix> compute_Q(const AveProblem& p) {
  if (p.rows() != p.cols()) throw BadShape("Q needs a square problem");
  Eigen::PartialPivLU<Matrix> lu(p.A - p.B);
  if (lu.rcond() < tol::rcond_min) return std::nullopt;
  // (A-B)^{-1}(A+B) is Q^T; one factorization serves both orientations.
  return Matrix(lu.solve(p.A + p.B).transpose());
}

TriState is_nondegenerate(const Matrix& Q, int cap) {
  return scan_minors(Q, cap, MinorTest::Nonzero);
}

TriState is_p_matrix(const Matrix& Q, int cap) {
  return scan_minors(Q, cap, MinorTest::Positive);
}

double sv_gap(const Matrix& A, const Matrix& B) {
  Eigen::BDCSVD<Matrix> sa(A);
  Eigen::BDCSVD<Matrix> sb(B);
  return sa.singularValues().minCoeff() - sb.singularValues().maxCoeff();
}

StructureReport analyze_structure(const AveProblem& p, int cap) {
  StructureReport r;
  r.sv_gap = sv_gap(p.A, p.B);
  if (p.rows() == p.cols()) {
    r.Q = compute_Q(p);
    if (r.Q) {
      r.nondegenerate = is_nondegenerate(*r.Q, cap);
      r.p_matrix = is_p_matrix(*r.Q, cap);
    }
  }
  r.unique_solution_certified = r.p_matrix == TriState::Yes;
  return r;
}

double psi(double s, double t) {
  const double lo = std::min(s, t);
  const double neg = std::max(-std::max(s, t), 0.0);
  return 0.5 * lo * lo + 0.5 * neg * neg;
}

std::vector<Eigen::Vector2d> psi_subdiff(double s, double t) {
  std::vector<Eigen::Vector2d> out;
  if (s < t) {
    out.emplace_back(s, -std::max(-t, 0.0));
  } else if (s > t) {
    out.emplace_back(-std::max(-s, 0.0), t);
  } else if (s > 0) {
    out.emplace_back(s, 0.0);
    out.emplace_back(0.0, t);
  } else {
    out.emplace_back(s, t);
  }
  return out;
}

MeritEval merit(const SplitPoint& w, TieRule rule) {
  if (rule == TieRule::Both)
    throw BadShape("merit needs a single-valued tie rule");
  const Index n = w.size();
  MeritEval e;
  e.subgradient = SplitPoint::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double s = w.u(i), t = w.v(i);
    e.value += psi(s, t);
    if (s == t && s > 0) {
      ++e.tie_count;
      // The branch kept by project_C2 is the one the subgradient must cancel:
      // PreferU keeps (s, 0), so g = (0, t), and symmetrically for PreferV.
      if (rule == TieRule::PreferU)
        e.subgradient.v(i) = t;
      else
        e.subgradient.u(i) = s;
    } else {
      const Eigen::Vector2d g = psi_subdiff(s, t).front();
      e.subgradient.u(i) = g(0);
      e.subgradient.v(i) = g(1);
    }
  }
  return e;
}

PointClass classify_point(const SplitSpace& space, const AveProblem& p,
                          const SplitPoint& w, double tol) {
  if (w.size() != p.cols() || space.n() != p.cols())
    throw BadShape("point/problem dimension mismatch");
  PointClass r;
  r.in_C1 = (space.apply(w) - space.rhs()).norm() <= tol;
  r.in_C2 = distance(w, project_C2(w, TieRule::PreferU)) <= tol;
  r.in_Omega = true;
  bool has_tie = false;
  for (Index i = 0; i < w.size(); ++i) {
    if (w.u(i) < -tol && w.v(i) < -tol) r.in_Omega = false;
    if (w.u(i) == w.v(i) && w.u(i) > 0) has_tie = true;
  }
  r.is_fixed_point =
      distance(map_step(space, w, TieRule::PreferU), w) <= tol ||
      (has_tie && distance(map_step(space, w, TieRule::PreferV), w) <= tol);
  if (r.in_C1 && r.in_C2)
    r.verdict = Verdict::Solution;
  else if (r.is_fixed_point)
    r.verdict = Verdict::SpuriousFixedPoint;
  else
    r.verdict = Verdict::NotFixed;
  return r;
}

double restricted_L_norm(const SplitSpace& space,
                         const std::vector<int>& columns) {
  if (columns.empty()) return 0;
  const Matrix L = space.kernel_projector();
  Matrix sub(L.rows(), static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] < 0 || columns[j] >= L.cols())
      throw BadShape("column index out of range");
    sub.col(static_cast<Index>(j)) = L.col(columns[j]);
  }
  return Eigen::BDCSVD<Matrix>(sub).singularValues().maxCoeff();
}

std::vector<int> complementary_columns(const std::vector<int>& lambda1, int n) {
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  for (int i : lambda1) {
    if (i < 0 || i >= n) throw BadShape("lambda1 index out of range");
    chosen[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<int> out(lambda1);
  for (int i = 0; i < n; ++i)
    if (!chosen[static_cast<std::size_t>(i)]) out.push_back(n + i);
  std::sort(out.begin(), out.end());
  return out;
}

LcpExport to_lcp(const AveProblem& p) {
  if (p.rows() != p.cols()) throw BadShape("LCP export needs a square problem");
  Eigen::PartialPivLU<Matrix> lu(p.A - p.B);
  if (lu.rcond() < tol::rcond_min)
    throw SingularSystem("A - B is numerically singular");
  // With M = (A-B)^{-1}(A+B) and q = -sqrt(2) (A-B)^{-1} c, the complementary
  // pair is (sqrt(2) x_+, sqrt(2) x_-): both split halves of a solution.
  return {lu.solve(p.A + p.B), -kSqrt2 * lu.solve(p.c)};
}

}  // namespace ave
