#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ave/projections.hpp"

namespace ave {

enum class SolveStatus {
  Converged,
  MaxIter,
  FixedPointNotSolution,
  NoGsmRoot,
  SingularSystem,
  InfeasibleAffine,
};

const char* to_string(SolveStatus s);

struct SolverConfig {
  double epsilon = 1e-6;          // residual tolerance
  std::optional<int> max_iter{};  // empty: solver default (2000; gsm 10000)
  double gamma = 0.5;             // relaxation weight, in (0, 1)
  int switch_N = 100;             // hybrid phase-1 iteration cap
  double switch_delta = 1e-3;     // hybrid phase-1 step-length threshold
  TieRule tie_rule = TieRule::PreferU;
  double fp_stagnation_tol = 1e-12;
};

struct SolverReport {
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  Vector x;
  double final_residual = 0;
  std::vector<double> residual_history;  // length = iterations + 1
  double wallclock_s = 0;
  std::pair<int, int> phase_iters{0, 0};  // (projection steps, linear steps)
  SplitPoint final_split;                 // terminal w; to_split(x) for x-space solvers
};

// Diagonal 0/1 selector D_w with complementary blocks: d1[i] * d2[i] = 0.
// Chosen so that P_C2(w) = D_w w under the given tie rule.
struct DiagonalSelector {
  Eigen::ArrayXd d1;
  Eigen::ArrayXd d2;
};

DiagonalSelector make_selector(const SplitPoint& w, TieRule rule);
SplitPoint apply(const DiagonalSelector& d, const SplitPoint& w);

// Blocks of the kernel projector L = I - T^+ T = [[L1, L2], [L2^T, L3]].
struct LBlocks {
  Matrix L1;
  Matrix L2;
  Matrix L3;
};

LBlocks compute_L_blocks(const SplitSpace& space);

// One alternating-projection step P_C1(P_C2(w)).
SplitPoint map_step(const SplitSpace& space, const SplitPoint& w,
                    TieRule rule = TieRule::PreferU);

// Solves (I - L D_w) w' = sqrt(2) T^+ c blockwise through the Schur
// complement of the (1,1) block. Throws SingularSystem when either factor is
// numerically singular; callers substitute a map_step.
SplitPoint ls_step(const SplitSpace& space, const LBlocks& blocks,
                   const SplitPoint& w, TieRule rule = TieRule::PreferU);

// Alternating projections from w0 = to_split(0).
SolverReport solve_map(const AveProblem& p, const SolverConfig& cfg = {});

// Alternating projections from a caller-supplied start.
SolverReport solve_map_from(const AveProblem& p, const SplitPoint& w0,
                            const SolverConfig& cfg = {});

// Relaxed iteration w <- (1-gamma) P_C2(w) + gamma P_C1(P_C2(w)).
SolverReport solve_relaxed_map(const AveProblem& p, const SolverConfig& cfg = {});

// Hybrid: projection steps first, then the linear fixed-point steps once the
// step length falls below switch_delta or switch_N steps have been taken.
SolverReport solve_map_ls(const AveProblem& p, const SolverConfig& cfg = {});

// Generalized Newton baseline; requires m = n and B = -I.
SolverReport solve_gnm(const AveProblem& p, const SolverConfig& cfg = {});

// Picard baseline x <- A^{-1} (-B |x| + c); requires m = n, A invertible.
SolverReport solve_picard(const AveProblem& p, const SolverConfig& cfg = {});

// Gauss-Seidel baseline; requires m = n and B = -I. The per-coordinate
// equation a x - |x| = b can lack a root; that trial stops with NoGsmRoot.
SolverReport solve_gsm(const AveProblem& p, const SolverConfig& cfg = {});

}  // namespace ave
