#include "ave/solvers.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <utility>

#include "ave/constants.hpp"

namespace ave {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void validate(const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0)) throw BadShape("epsilon must be positive");
  if (!(cfg.gamma > 0 && cfg.gamma < 1)) throw BadShape("gamma must be in (0, 1)");
  if (cfg.switch_N < 1) throw BadShape("switch_N must be >= 1");
  if (!(cfg.switch_delta > 0)) throw BadShape("switch_delta must be positive");
  if (cfg.max_iter && *cfg.max_iter < 1) throw BadShape("max_iter must be >= 1");
  if (cfg.tie_rule == TieRule::Both)
    throw BadShape("solvers need a single-valued tie rule");
}

int resolved_cap(const SolverConfig& cfg, int solver_default) {
  return cfg.max_iter.value_or(solver_default);
}

// Shared InfeasibleAffine-to-status handling for the split-space solvers.
bool build_space(const AveProblem& p, std::optional<SplitSpace>& space,
                 SolverReport& rep) {
  try {
    space.emplace(p);
    return true;
  } catch (const InfeasibleAffine&) {
    rep.status = SolveStatus::InfeasibleAffine;
    rep.x = Vector::Zero(p.cols());
    rep.final_split = SplitPoint::Zero(p.cols());
    rep.final_residual = residual(p, rep.x);
    rep.residual_history = {rep.final_residual};
    return false;
  }
}

void require_square(const AveProblem& p, const char* who) {
  if (p.rows() != p.cols())
    throw BadShape(std::string(who) + " needs a square problem");
}

void require_minus_identity(const AveProblem& p, const char* who) {
  if (!(p.B + Matrix::Identity(p.rows(), p.cols())).isZero(0.0))
    throw BadShape(std::string(who) + " needs B = -I");
}

double sgn(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::FixedPointNotSolution: return "FixedPointNotSolution";
    case SolveStatus::NoGsmRoot: return "NoGsmRoot";
    case SolveStatus::SingularSystem: return "SingularSystem";
    case SolveStatus::InfeasibleAffine: return "InfeasibleAffine";
  }
  return "?";
}

DiagonalSelector make_selector(const SplitPoint& w, TieRule rule) {
  if (rule == TieRule::Both)
    throw BadShape("selector needs a single-valued tie rule");
  const Index n = w.size();
  DiagonalSelector d{Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n)};
  for (Index i = 0; i < n; ++i) {
    const double s = w.u(i), t = w.v(i);
    if (s > t && s >= 0)
      d.d1(i) = 1;
    else if (s < t && t >= 0)
      d.d2(i) = 1;
    else if (s == t && s > 0)
      (rule == TieRule::PreferU ? d.d1(i) : d.d2(i)) = 1;
    // all remaining cases (both entries negative, or a nonpositive tie): 0, 0
  }
  return d;
}

SplitPoint apply(const DiagonalSelector& d, const SplitPoint& w) {
  return {(d.d1 * w.u.array()).matrix(), (d.d2 * w.v.array()).matrix()};
}

LBlocks compute_L_blocks(const SplitSpace& space) {
  const Matrix L = space.kernel_projector();
  const Index n = space.n();
  return {L.topLeftCorner(n, n), L.topRightCorner(n, n),
          L.bottomRightCorner(n, n)};
}

SplitPoint map_step(const SplitSpace& space, const SplitPoint& w, TieRule rule) {
  return project_C1(space, project_C2(w, rule));
}

SplitPoint ls_step(const SplitSpace& space, const LBlocks& blocks,
                   const SplitPoint& w, TieRule rule) {
  const Index n = space.n();
  const DiagonalSelector d = make_selector(w, rule);
  // (I - L D_w) w' = sqrt(2) T^+ c, with L D_w scaling the columns of L:
  //   [ I - L1 D1    -L2 D2  ] [u']   [b1]
  //   [ -L2^T D1   I - L3 D2 ] [v'] = [b2]
  const Matrix P =
      Matrix::Identity(n, n) - blocks.L1 * d.d1.matrix().asDiagonal();
  const Matrix Qb = -blocks.L2 * d.d2.matrix().asDiagonal();
  const Matrix Rb = -blocks.L2.transpose() * d.d1.matrix().asDiagonal();
  const Matrix Sb =
      Matrix::Identity(n, n) - blocks.L3 * d.d2.matrix().asDiagonal();

  Eigen::PartialPivLU<Matrix> lu_p(P);
  if (lu_p.rcond() < tol::rcond_min)
    throw SingularSystem("pivot block of I - L D is numerically singular");
  const Vector& b1 = space.particular().u;
  const Vector& b2 = space.particular().v;
  const Matrix schur = Sb - Rb * lu_p.solve(Qb);
  Eigen::PartialPivLU<Matrix> lu_s(schur);
  if (lu_s.rcond() < tol::rcond_min)
    throw SingularSystem("Schur complement of I - L D is numerically singular");
  Vector vp = lu_s.solve(b2 - Rb * lu_p.solve(b1));
  Vector up = lu_p.solve(b1 - Qb * vp);
  return {std::move(up), std::move(vp)};
}

SolverReport solve_map_from(const AveProblem& p, const SplitPoint& w0,
                            const SolverConfig& cfg) {
  validate(cfg);
  if (w0.size() != p.cols()) throw BadShape("w0 has wrong dimension");
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 2000);
  SolverReport rep;
  std::optional<SplitSpace> space;
  if (!build_space(p, space, rep)) {
    rep.wallclock_s = clock.seconds();
    return rep;
  }

  SplitPoint w = w0;
  Vector x = from_split(w);
  double res = residual(p, x);
  rep.residual_history.push_back(res);
  int k = 0;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    while (k < cap) {
      SplitPoint w_next = map_step(*space, w, cfg.tie_rule);
      const double step = distance(w_next, w);
      w = std::move(w_next);
      ++k;
      x = from_split(w);
      res = residual(p, x);
      rep.residual_history.push_back(res);
      if (res <= cfg.epsilon) {
        status = SolveStatus::Converged;
        break;
      }
      if (step <= cfg.fp_stagnation_tol) {
        status = SolveStatus::FixedPointNotSolution;
        break;
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.x = std::move(x);
  rep.final_residual = res;
  rep.final_split = std::move(w);
  rep.phase_iters = {k, 0};
  rep.wallclock_s = clock.seconds();
  return rep;
}

SolverReport solve_map(const AveProblem& p, const SolverConfig& cfg) {
  return solve_map_from(p, SplitPoint::Zero(p.cols()), cfg);
}

SolverReport solve_relaxed_map(const AveProblem& p, const SolverConfig& cfg) {
  validate(cfg);
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 2000);
  const double g = cfg.gamma;
  SolverReport rep;
  std::optional<SplitSpace> space;
  if (!build_space(p, space, rep)) {
    rep.wallclock_s = clock.seconds();
    return rep;
  }

  // w0 = (1-g) wbar + g P_C1(wbar) with wbar = 0 in C2.
  SplitPoint w = g * space->particular();
  SplitPoint z = project_C2(w, cfg.tie_rule);
  Vector x;
  // The iterate is a convex combination lying in neither set, so the projected
  // point P_C2(w) is tested as a solution candidate too; the better one is
  // reported.
  auto best_residual = [&](const SplitPoint& wi, const SplitPoint& zi) {
    Vector x1 = from_split(wi);
    const double r1 = residual(p, x1);
    Vector x2 = from_split(zi);
    const double r2 = residual(p, x2);
    if (r2 < r1) {
      x = std::move(x2);
      return r2;
    }
    x = std::move(x1);
    return r1;
  };

  double res = best_residual(w, z);
  rep.residual_history.push_back(res);
  int k = 0;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    while (k < cap) {
      SplitPoint w_next = (1.0 - g) * z + g * project_C1(*space, z);
      const double step = distance(w_next, w);
      w = std::move(w_next);
      z = project_C2(w, cfg.tie_rule);
      ++k;
      res = best_residual(w, z);
      rep.residual_history.push_back(res);
      if (res <= cfg.epsilon) {
        status = SolveStatus::Converged;
        break;
      }
      if (step <= cfg.fp_stagnation_tol) {
        status = SolveStatus::FixedPointNotSolution;
        break;
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.x = std::move(x);
  rep.final_residual = res;
  rep.final_split = std::move(w);
  rep.phase_iters = {k, 0};
  rep.wallclock_s = clock.seconds();
  return rep;
}

SolverReport solve_map_ls(const AveProblem& p, const SolverConfig& cfg) {
  validate(cfg);
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 2000);
  SolverReport rep;
  std::optional<SplitSpace> space;
  if (!build_space(p, space, rep)) {
    rep.wallclock_s = clock.seconds();
    return rep;
  }

  SplitPoint w = (1.0 / kSqrt2) * space->particular();  // T^+ c
  Vector x = from_split(w);
  double res = residual(p, x);
  rep.residual_history.push_back(res);
  int k = 0, map_count = 0, ls_count = 0;
  bool ls_phase = false;
  std::optional<LBlocks> blocks;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    while (k < cap) {
      SplitPoint w_next;
      bool took_map = false;
      if (!ls_phase) {
        SplitPoint cand = map_step(*space, w, cfg.tie_rule);
        if (distance(cand, w) <= cfg.switch_delta) {
          ls_phase = true;  // discard the candidate, fall through to a linear step
        } else {
          w_next = std::move(cand);
          took_map = true;
          if (++map_count >= cfg.switch_N) ls_phase = true;
        }
      }
      if (!took_map) {
        if (!blocks) blocks = compute_L_blocks(*space);
        try {
          w_next = ls_step(*space, *blocks, w, cfg.tie_rule);
          ++ls_count;
        } catch (const SingularSystem&) {
          w_next = map_step(*space, w, cfg.tie_rule);
          ++map_count;
        }
      }
      const double step = distance(w_next, w);
      w = std::move(w_next);
      ++k;
      x = from_split(w);
      res = residual(p, x);
      rep.residual_history.push_back(res);
      if (res <= cfg.epsilon) {
        status = SolveStatus::Converged;
        break;
      }
      if (step <= cfg.fp_stagnation_tol) {
        status = SolveStatus::FixedPointNotSolution;
        break;
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.x = std::move(x);
  rep.final_residual = res;
  rep.final_split = std::move(w);
  rep.phase_iters = {map_count, ls_count};
  rep.wallclock_s = clock.seconds();
  return rep;
}

SolverReport solve_gnm(const AveProblem& p, const SolverConfig& cfg) {
  validate(cfg);
  require_square(p, "gnm");
  require_minus_identity(p, "gnm");
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 2000);
  const Index n = p.cols();
  SolverReport rep;

  Vector x = Vector::Zero(n);
  double res = residual(p, x);
  rep.residual_history.push_back(res);
  int k = 0;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    while (k < cap) {
      Matrix J = p.A;
      for (Index i = 0; i < n; ++i) J(i, i) -= sgn(x(i));
      Eigen::PartialPivLU<Matrix> lu(J);
      if (lu.rcond() < tol::rcond_min) {
        status = SolveStatus::SingularSystem;
        break;
      }
      Vector x_next = lu.solve(p.c);
      const double step = (x_next - x).norm();
      x = std::move(x_next);
      ++k;
      res = residual(p, x);
      rep.residual_history.push_back(res);
      if (res <= cfg.epsilon) {
        status = SolveStatus::Converged;
        break;
      }
      if (step <= cfg.fp_stagnation_tol) {
        status = SolveStatus::FixedPointNotSolution;
        break;
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.final_residual = res;
  rep.final_split = to_split(x);
  rep.x = std::move(x);
  rep.wallclock_s = clock.seconds();
  return rep;
}

SolverReport solve_picard(const AveProblem& p, const SolverConfig& cfg) {
  validate(cfg);
  require_square(p, "picard");
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 2000);
  SolverReport rep;

  Vector x = Vector::Zero(p.cols());
  double res = residual(p, x);
  rep.residual_history.push_back(res);
  int k = 0;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    Eigen::PartialPivLU<Matrix> lu(p.A);  // factorized once
    if (lu.rcond() < tol::rcond_min) {
      status = SolveStatus::SingularSystem;
    } else {
      while (k < cap) {
        Vector x_next = lu.solve(p.c - p.B * x.cwiseAbs());
        const double step = (x_next - x).norm();
        x = std::move(x_next);
        ++k;
        res = residual(p, x);
        rep.residual_history.push_back(res);
        if (res <= cfg.epsilon) {
          status = SolveStatus::Converged;
          break;
        }
        if (step <= cfg.fp_stagnation_tol) {
          status = SolveStatus::FixedPointNotSolution;
          break;
        }
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.final_residual = res;
  rep.final_split = to_split(x);
  rep.x = std::move(x);
  rep.wallclock_s = clock.seconds();
  return rep;
}

SolverReport solve_gsm(const AveProblem& p, const SolverConfig& cfg) {
  validate(cfg);
  require_square(p, "gsm");
  require_minus_identity(p, "gsm");
  Stopwatch clock;
  const int cap = resolved_cap(cfg, 10000);
  const Index n = p.cols();
  SolverReport rep;

  Vector x = Vector::Zero(n);
  double res = residual(p, x);
  rep.residual_history.push_back(res);
  int k = 0;
  SolveStatus status = SolveStatus::MaxIter;
  if (res <= cfg.epsilon) {
    status = SolveStatus::Converged;
  } else {
    while (k < cap && status == SolveStatus::MaxIter) {
      const Vector x_prev = x;
      bool root_failed = false;
      for (Index i = 0; i < n && !root_failed; ++i) {
        // Coordinates before i already hold sweep-k values.
        const double b = p.c(i) - (p.A.row(i).dot(x) - p.A(i, i) * x(i));
        const double a = p.A(i, i);
        // a t - |t| = b: the nonnegative root b/(a-1), else the nonpositive
        // root b/(a+1); a branch is unusable when its quotient is nonfinite
        // (a = 1 or a = -1) or lands on the wrong side of zero.
        const double pos_root = b / (a - 1.0);
        const double neg_root = b / (a + 1.0);
        if (std::isfinite(pos_root) && pos_root >= 0)
          x(i) = pos_root;
        else if (std::isfinite(neg_root) && neg_root <= 0)
          x(i) = neg_root;
        else
          root_failed = true;
      }
      ++k;
      res = residual(p, x);
      rep.residual_history.push_back(res);
      if (root_failed) {
        status = SolveStatus::NoGsmRoot;
      } else if (res <= cfg.epsilon) {
        status = SolveStatus::Converged;
      } else if ((x - x_prev).norm() <= cfg.fp_stagnation_tol) {
        status = SolveStatus::FixedPointNotSolution;
      }
    }
  }
  rep.status = status;
  rep.iterations = k;
  rep.final_residual = res;
  rep.final_split = to_split(x);
  rep.x = std::move(x);
  rep.wallclock_s = clock.seconds();
  return rep;
}

}  // namespace ave
