#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ave/generators.hpp"
#include "ave/solvers.hpp"

namespace ave {

enum class SolverKind { Map, RelaxedMap, MapLs, Gnm, Picard, Gsm };

const char* to_string(SolverKind k);
std::optional<SolverKind> parse_solver_kind(std::string_view name);

// A reproducible benchmark run: `trials` instances drawn from `gen` (instance
// k uses the stream for index k), each solved by every listed solver.
struct Campaign {
  GenSpec gen;
  int trials = 1;
  std::vector<SolverKind> solvers;
  SolverConfig config;
  std::string out_path;  // empty: caller decides (CLI prints to stdout)
};

struct TrialRecord {
  int trial = 0;
  SolverKind solver = SolverKind::Map;
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double final_residual = 0;
  double seconds = 0;
};

// Per-solver aggregate; averages are over converged trials only.
struct CampaignRow {
  SolverKind solver = SolverKind::Map;
  int trials = 0;
  int successes = 0;
  double success_rate = 0;
  double avg_time_s = 0;   // meaningless when successes = 0
  double avg_iters = 0;    // meaningless when successes = 0
  int n_maxiter = 0;
  int n_fixedpoint = 0;
  int n_singular = 0;
  int n_nogsmroot = 0;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::vector<TrialRecord> records;
};

SolverReport run_solver(SolverKind kind, const AveProblem& p,
                        const SolverConfig& cfg);

// Deterministic given (campaign, seed); per-trial log lines go to `log` when
// given. Solver shape preconditions propagate as BadShape.
CampaignResult run_campaign(const Campaign& c, std::ostream* log = nullptr);

// CSV with header; '.' decimal point, 6 significant digits, "-" for undefined
// averages. Identical across reruns except for the avg_time_s column.
std::string render_csv(const CampaignResult& r);

// Flat key=value config ('#' comments). Keys: family, n, m, alpha, trials,
// seed, solvers, eps, max_iter, gamma, N, delta, tie, out. Unknown keys are
// a ParseError.
Campaign parse_campaign(std::istream& in);
Campaign parse_campaign_file(const std::string& path);

}  // namespace ave
