#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ave/analysis.hpp"
#include "ave/campaign.hpp"
#include "ave/io.hpp"

namespace {

ave::TieRule tie_from_name(const std::string& name) {
  return name == "v" || name == "prefer-v" ? ave::TieRule::PreferV
                                           : ave::TieRule::PreferU;
}

void write_vector_file(const std::string& path, const ave::Vector& x) {
  std::ofstream os(path);
  if (!os) throw ave::ParseError("cannot open for writing: " + path);
  os << std::setprecision(17);
  for (ave::Index i = 0; i < x.size(); ++i) os << (i ? " " : "") << x(i);
  os << '\n';
}

int run_solve(const std::string& file, ave::SolverKind kind,
              const ave::SolverConfig& cfg, const std::string& out) {
  const ave::AveProblem p = ave::read_problem_file(file);
  const ave::SolverReport rep = ave::run_solver(kind, p, cfg);
  std::cout << "status: " << ave::to_string(rep.status) << '\n'
            << "iterations: " << rep.iterations << '\n'
            << "residual: " << rep.final_residual << '\n';
  if (kind == ave::SolverKind::MapLs)
    std::cout << "phase_iters: " << rep.phase_iters.first << " map + "
              << rep.phase_iters.second << " ls\n";
  std::cout << "x:";
  for (ave::Index i = 0; i < rep.x.size(); ++i) std::cout << ' ' << rep.x(i);
  std::cout << '\n';
  if (!out.empty()) write_vector_file(out, rep.x);
  return rep.status == ave::SolveStatus::Converged ? 0 : 1;
}

int run_bench(const std::string& file, const std::string& out_override) {
  ave::Campaign c = ave::parse_campaign_file(file);
  if (!out_override.empty()) c.out_path = out_override;
  const ave::CampaignResult res = ave::run_campaign(c, &std::cerr);
  const std::string csv = ave::render_csv(res);
  if (c.out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream os(c.out_path);
    if (!os) throw ave::ParseError("cannot open for writing: " + c.out_path);
    os << csv;
  }
  return 0;
}

int run_analyze(const std::string& file, int cap) {
  const ave::AveProblem p = ave::read_problem_file(file);
  const ave::StructureReport r = ave::analyze_structure(p, cap);
  if (p.rows() != p.cols())
    std::cout << "Q: skipped\n";
  else if (!r.Q)
    std::cout << "Q: absent\n";
  else if (r.nondegenerate == ave::TriState::Yes)
    std::cout << "Q: nondegenerate\n";
  else if (r.nondegenerate == ave::TriState::No)
    std::cout << "Q: degenerate\n";
  else
    std::cout << "Q: skipped\n";
  std::cout << "P-matrix: " << ave::to_string(r.p_matrix) << '\n';
  std::cout << "sv_gap = " << r.sv_gap << '\n';
  std::cout << "unique-solution certificate: "
            << (r.unique_solution_certified ? "yes" : "no") << '\n';
  return 0;
}

int run_generate(const ave::GenSpec& spec, std::uint64_t trial,
                 const std::string& out, const std::string& solution_out) {
  const ave::GeneratedInstance inst = ave::make_instance(spec, trial);
  if (out.empty())
    ave::write_problem(std::cout, inst.problem);
  else
    ave::write_problem_file(out, inst.problem);
  if (!solution_out.empty()) write_vector_file(solution_out, inst.x_star);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating-projection solvers for A x + B |x| = c"};
  app.require_subcommand(1);

  std::string solve_file, solve_solver = "map", solve_out, solve_tie = "prefer-u";
  ave::SolverConfig cfg;
  int solve_max_iter = 0;
  auto* solve = app.add_subcommand("solve", "Solve one problem file");
  solve->add_option("file", solve_file, "problem file (AVE text format)")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--solver", solve_solver, "solver to run")
      ->check(CLI::IsMember({"map", "relaxed-map", "map-ls", "gnm", "picard", "gsm"}));
  solve->add_option("--eps", cfg.epsilon, "residual tolerance");
  solve->add_option("--max-iter", solve_max_iter, "iteration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("--gamma", cfg.gamma, "relaxation weight in (0,1)");
  solve->add_option("--N,--switch-n", cfg.switch_N, "hybrid phase-1 cap");
  solve->add_option("--delta,--switch-delta", cfg.switch_delta,
                    "hybrid step threshold");
  solve->add_option("--tie", solve_tie, "tie rule")
      ->check(CLI::IsMember({"u", "v", "prefer-u", "prefer-v"}));
  solve->add_option("--out", solve_out, "write the final x to this file");

  std::string bench_file, bench_out;
  auto* bench = app.add_subcommand("bench", "Run a benchmark campaign config");
  bench->add_option("config", bench_file, "campaign config (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "CSV destination (overrides config)");

  std::string analyze_file;
  int analyze_cap = ave::tol::minor_cap;
  auto* analyze = app.add_subcommand("analyze", "Structural report for a problem file");
  analyze->add_option("file", analyze_file, "problem file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--cap", analyze_cap, "principal-minor enumeration cap");

  std::string gen_family = "uniform", gen_out, gen_solution_out;
  int gen_n = 10, gen_m = 0, gen_alpha = 0;
  std::uint64_t gen_seed = 0, gen_trial = 0;
  auto* generate = app.add_subcommand("generate", "Emit a random instance file");
  generate->add_option("--family", gen_family, "instance family")
      ->check(CLI::IsMember({"uniform", "psd-gram", "gaussian-rect"}));
  generate->add_option("--n", gen_n, "columns")->check(CLI::PositiveNumber);
  generate->add_option("--m", gen_m, "rows (gaussian-rect; default n)")
      ->check(CLI::PositiveNumber);
  generate->add_option("--alpha", gen_alpha, "solution magnitude exponent")
      ->check(CLI::Range(0, 3));
  generate->add_option("--seed", gen_seed, "base seed");
  generate->add_option("--trial", gen_trial, "instance index within the seed");
  generate->add_option("--out", gen_out, "problem file destination (default stdout)");
  generate->add_option("--solution-out", gen_solution_out,
                       "also write the planted solution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      cfg.tie_rule = tie_from_name(solve_tie);
      if (solve_max_iter > 0) cfg.max_iter = solve_max_iter;
      return run_solve(solve_file, *ave::parse_solver_kind(solve_solver), cfg,
                       solve_out);
    }
    if (bench->parsed()) return run_bench(bench_file, bench_out);
    if (analyze->parsed()) return run_analyze(analyze_file, analyze_cap);
    if (generate->parsed()) {
      ave::GenSpec spec;
      if (gen_family == "uniform") spec.family = ave::GenFamily::Uniform;
      else if (gen_family == "psd-gram") spec.family = ave::GenFamily::PsdGram;
      else spec.family = ave::GenFamily::GaussianRect;
      spec.n = gen_n;
      spec.m = gen_m;
      spec.alpha = gen_alpha;
      spec.seed = gen_seed;
      return run_generate(spec, gen_trial, gen_out, gen_solution_out);
    }
  } catch (const ave::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // BadShape and kin
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::length_error& e) {  // SizeCap
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
