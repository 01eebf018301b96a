#pragma once

#include <optional>
#include <vector>

#include "ave/constants.hpp"
#include "ave/solvers.hpp"

namespace ave {

enum class TriState { Yes, No, Skipped };

const char* to_string(TriState t);

// Structural certificates for square problems. p_matrix = Yes certifies a
// unique solution for every right-hand side; nondegenerate = Yes certifies
// that every fixed point of the alternating projection inside Omega solves
// the equation.
struct StructureReport {
  std::optional<Matrix> Q;  // absent when A - B is numerically singular
  TriState nondegenerate = TriState::Skipped;
  TriState p_matrix = TriState::Skipped;
  double sv_gap = 0;  // sigma_min(A) - sigma_max(B)
  bool unique_solution_certified = false;
};

// Q = (A^T + B^T)(A^T - B^T)^{-1}. Throws BadShape when m != n; returns
// nullopt when the condition estimate of A^T - B^T exceeds 1e12.
std::optional<Matrix> compute_Q(const AveProblem& p);

// Brute force over all 2^n - 1 principal minors; Skipped when n > cap.
TriState is_nondegenerate(const Matrix& Q, int cap = tol::minor_cap);
TriState is_p_matrix(const Matrix& Q, int cap = tol::minor_cap);

double sv_gap(const Matrix& A, const Matrix& B);

StructureReport analyze_structure(const AveProblem& p, int cap = tol::minor_cap);

// Complementarity merit function: psi vanishes exactly on
// M = {(s,t) : s,t >= 0, st = 0}; Psi(w) = sum_i psi(u_i, v_i).
double psi(double s, double t);

// B-subdifferential of psi; two elements exactly at s = t > 0.
std::vector<Eigen::Vector2d> psi_subdiff(double s, double t);

struct MeritEval {
  double value = 0;        // Psi(w)
  SplitPoint subgradient;  // selected element of the B-subdifferential of Psi
  int tie_count = 0;       // coordinates with u_i = v_i > 0
};

// Satisfies w - subgradient = project_C2(w, rule).
MeritEval merit(const SplitPoint& w, TieRule rule = TieRule::PreferU);

enum class Verdict { Solution, SpuriousFixedPoint, NotFixed };

const char* to_string(Verdict v);

struct PointClass {
  bool in_C1 = false;
  bool in_C2 = false;
  bool in_Omega = false;        // no coordinate pair with both entries < -tol
  bool is_fixed_point = false;  // under either tie rule
  Verdict verdict = Verdict::NotFixed;
};

// Membership tests use the absolute tolerance tol. Solution iff the point is
// in C1 and C2; a fixed point outside that intersection is spurious.
PointClass classify_point(const SplitSpace& space, const AveProblem& p,
                          const SplitPoint& w, double tol = 1e-8);

// Spectral norm of the chosen columns of L = I - T^+ T (a diagnostic for the
// local contraction rate of the alternating projection).
double restricted_L_norm(const SplitSpace& space, const std::vector<int>& columns);

// Canonical column set lambda1 united with {n + i : i not in lambda1}.
std::vector<int> complementary_columns(const std::vector<int>& lambda1, int n);

// Equivalent linear complementarity problem: find u >= 0 with
// M u + q >= 0 and <u, M u + q> = 0, where M = Q^T = (A-B)^{-1}(A+B) and
// q = -sqrt(2) (A-B)^{-1} c. A solution x* of the AVE yields the LCP solution
// u = to_split(x*).u = sqrt(2) x*_+, with M u + q = to_split(x*).v.
struct LcpExport {
  Matrix M;
  Vector q;
};

// Throws BadShape when m != n, SingularSystem when A - B is singular.
LcpExport to_lcp(const AveProblem& p);

}  // namespace ave
