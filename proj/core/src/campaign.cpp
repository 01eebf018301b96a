#include "ave/campaign.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>

namespace ave {

namespace {

// %.6g with a '.' decimal point regardless of the global locale.
std::string fmt6(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(6) << v;
  return os.str();
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

long long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return x;
  } catch (...) {
    throw ParseError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

double parse_real(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return x;
  } catch (...) {
    throw ParseError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

}  // namespace

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Map: return "map";
    case SolverKind::RelaxedMap: return "relaxed-map";
    case SolverKind::MapLs: return "map-ls";
    case SolverKind::Gnm: return "gnm";
    case SolverKind::Picard: return "picard";
    case SolverKind::Gsm: return "gsm";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  if (name == "map") return SolverKind::Map;
  if (name == "relaxed-map") return SolverKind::RelaxedMap;
  if (name == "map-ls") return SolverKind::MapLs;
  if (name == "gnm") return SolverKind::Gnm;
  if (name == "picard") return SolverKind::Picard;
  if (name == "gsm") return SolverKind::Gsm;
  return std::nullopt;
}

SolverReport run_solver(SolverKind kind, const AveProblem& p,
                        const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::Map: return solve_map(p, cfg);
    case SolverKind::RelaxedMap: return solve_relaxed_map(p, cfg);
    case SolverKind::MapLs: return solve_map_ls(p, cfg);
    case SolverKind::Gnm: return solve_gnm(p, cfg);
    case SolverKind::Picard: return solve_picard(p, cfg);
    case SolverKind::Gsm: return solve_gsm(p, cfg);
  }
  throw BadShape("unknown solver kind");
}

CampaignResult run_campaign(const Campaign& c, std::ostream* log) {
  if (c.trials < 1) throw BadShape("campaign needs trials >= 1");
  if (c.solvers.empty()) throw BadShape("campaign needs at least one solver");

  struct Acc {
    int succ = 0;
    double time = 0, iters = 0;
    int maxiter = 0, fixedpoint = 0, singular = 0, nogsmroot = 0;
  };
  std::vector<Acc> accs(c.solvers.size());
  CampaignResult out;
  out.records.reserve(static_cast<std::size_t>(c.trials) * c.solvers.size());

  for (int trial = 0; trial < c.trials; ++trial) {
    const GeneratedInstance inst =
        make_instance(c.gen, static_cast<std::uint64_t>(trial));
    for (std::size_t s = 0; s < c.solvers.size(); ++s) {
      const SolverKind kind = c.solvers[s];
      const SolverReport rep = run_solver(kind, inst.problem, c.config);
      out.records.push_back({trial, kind, rep.status, rep.iterations,
                             rep.final_residual, rep.wallclock_s});
      Acc& a = accs[s];
      switch (rep.status) {
        case SolveStatus::Converged:
          ++a.succ;
          a.time += rep.wallclock_s;
          a.iters += rep.iterations;
          break;
        case SolveStatus::MaxIter: ++a.maxiter; break;
        case SolveStatus::FixedPointNotSolution: ++a.fixedpoint; break;
        case SolveStatus::SingularSystem: ++a.singular; break;
        case SolveStatus::NoGsmRoot: ++a.nogsmroot; break;
        case SolveStatus::InfeasibleAffine: break;  // impossible for planted instances
      }
      if (log)
        *log << "[trial " << trial + 1 << "/" << c.trials << "] "
             << to_string(kind) << ": " << to_string(rep.status)
             << " iters=" << rep.iterations << " res=" << rep.final_residual
             << " t=" << rep.wallclock_s << "s\n";
    }
  }

  out.rows.reserve(c.solvers.size());
  for (std::size_t s = 0; s < c.solvers.size(); ++s) {
    const Acc& a = accs[s];
    CampaignRow row;
    row.solver = c.solvers[s];
    row.trials = c.trials;
    row.successes = a.succ;
    row.success_rate = static_cast<double>(a.succ) / c.trials;
    if (a.succ > 0) {
      row.avg_time_s = a.time / a.succ;
      row.avg_iters = a.iters / a.succ;
    }
    row.n_maxiter = a.maxiter;
    row.n_fixedpoint = a.fixedpoint;
    row.n_singular = a.singular;
    row.n_nogsmroot = a.nogsmroot;
    out.rows.push_back(row);
  }
  return out;
}

std::string render_csv(const CampaignResult& r) {
  std::string csv =
      "solver,trials,successes,success_rate,avg_time_s,avg_iters,"
      "n_maxiter,n_fixedpoint,n_singular,n_nogsmroot\n";
  for (const CampaignRow& row : r.rows) {
    csv += to_string(row.solver);
    csv += ',';
    csv += std::to_string(row.trials);
    csv += ',';
    csv += std::to_string(row.successes);
    csv += ',';
    csv += fmt6(row.success_rate);
    csv += ',';
    csv += row.successes > 0 ? fmt6(row.avg_time_s) : "-";
    csv += ',';
    csv += row.successes > 0 ? fmt6(row.avg_iters) : "-";
    csv += ',';
    csv += std::to_string(row.n_maxiter);
    csv += ',';
    csv += std::to_string(row.n_fixedpoint);
    csv += ',';
    csv += std::to_string(row.n_singular);
    csv += ',';
    csv += std::to_string(row.n_nogsmroot);
    csv += '\n';
  }
  return csv;
}

Campaign parse_campaign(std::istream& in) {
  Campaign c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected key = value");

    if (key == "family") {
      if (value == "uniform")
        c.gen.family = GenFamily::Uniform;
      else if (value == "psd-gram")
        c.gen.family = GenFamily::PsdGram;
      else if (value == "gaussian-rect")
        c.gen.family = GenFamily::GaussianRect;
      else
        throw ParseError("unknown family '" + value + "'");
    } else if (key == "n") {
      c.gen.n = static_cast<int>(parse_int(value, key));
      if (c.gen.n < 1) throw ParseError("n must be >= 1");
    } else if (key == "m") {
      c.gen.m = static_cast<int>(parse_int(value, key));
      if (c.gen.m < 1) throw ParseError("m must be >= 1");
    } else if (key == "alpha") {
      c.gen.alpha = static_cast<int>(parse_int(value, key));
      if (c.gen.alpha < 0 || c.gen.alpha > 3)
        throw ParseError("alpha must be in {0,1,2,3}");
    } else if (key == "trials") {
      c.trials = static_cast<int>(parse_int(value, key));
      if (c.trials < 1) throw ParseError("trials must be >= 1");
    } else if (key == "seed") {
      c.gen.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "solvers") {
      c.solvers.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const std::string name = trim(tok);
        const auto kind = parse_solver_kind(name);
        if (!kind) throw ParseError("unknown solver '" + name + "'");
        c.solvers.push_back(*kind);
      }
    } else if (key == "eps") {
      c.config.epsilon = parse_real(value, key);
      if (!(c.config.epsilon > 0)) throw ParseError("eps must be positive");
    } else if (key == "max_iter") {
      const long long v = parse_int(value, key);
      if (v < 1) throw ParseError("max_iter must be >= 1");
      c.config.max_iter = static_cast<int>(v);
    } else if (key == "gamma") {
      c.config.gamma = parse_real(value, key);
      if (!(c.config.gamma > 0 && c.config.gamma < 1))
        throw ParseError("gamma must be in (0, 1)");
    } else if (key == "N") {
      c.config.switch_N = static_cast<int>(parse_int(value, key));
      if (c.config.switch_N < 1) throw ParseError("N must be >= 1");
    } else if (key == "delta") {
      c.config.switch_delta = parse_real(value, key);
      if (!(c.config.switch_delta > 0))
        throw ParseError("delta must be positive");
    } else if (key == "tie") {
      if (value == "u" || value == "prefer-u")
        c.config.tie_rule = TieRule::PreferU;
      else if (value == "v" || value == "prefer-v")
        c.config.tie_rule = TieRule::PreferV;
      else
        throw ParseError("tie must be u or v");
    } else if (key == "out") {
      c.out_path = value;
    } else {
      throw ParseError("unknown key '" + key + "'");
    }
  }
  if (c.solvers.empty())
    throw ParseError("config must list at least one solver");
  return c;
}

Campaign parse_campaign_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open: " + path);
  return parse_campaign(is);
}

}  // namespace ave
