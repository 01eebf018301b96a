#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ave/campaign.hpp"

using namespace ave;

namespace {

Campaign parse_str(const std::string& text) {
  std::istringstream is(text);
  return parse_campaign(is);
}

// Split CSV text into lines with the avg_time_s column blanked, so reruns can
// be compared byte-for-byte on the deterministic columns.
std::vector<std::string> strip_time_column(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() > 4) cells[4] = "";
    std::string joined;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) joined += ',';
      joined += cells[i];
    }
    out.push_back(joined);
  }
  return out;
}

}  // namespace

TEST_CASE("solver kind names round trip") {
  for (SolverKind k : {SolverKind::Map, SolverKind::RelaxedMap, SolverKind::MapLs,
                       SolverKind::Gnm, SolverKind::Picard, SolverKind::Gsm}) {
    auto back = parse_solver_kind(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK_FALSE(parse_solver_kind("newton").has_value());
  CHECK(std::string(to_string(SolverKind::MapLs)) == "map-ls");
}

TEST_CASE("campaign config parsing") {
  Campaign c = parse_str(
      "# Table-1 style run\n"
      "family = uniform\n"
      "n = 20\n"
      "alpha = 1\n"
      "trials = 5\n"
      "seed = 99\n"
      "solvers = map, gnm , picard,gsm\n"
      "eps = 1e-8\n"
      "max_iter = 500\n"
      "gamma = 0.7\n"
      "N = 50\n"
      "delta = 1e-4   # switch earlier\n"
      "tie = v\n"
      "out = /tmp/run.csv\n");
  CHECK(c.gen.family == GenFamily::Uniform);
  CHECK(c.gen.n == 20);
  CHECK(c.gen.alpha == 1);
  CHECK(c.gen.seed == 99);
  CHECK(c.trials == 5);
  REQUIRE(c.solvers.size() == 4);
  CHECK(c.solvers[0] == SolverKind::Map);
  CHECK(c.solvers[3] == SolverKind::Gsm);
  CHECK(c.config.epsilon == 1e-8);
  REQUIRE(c.config.max_iter.has_value());
  CHECK(*c.config.max_iter == 500);
  CHECK(c.config.gamma == 0.7);
  CHECK(c.config.switch_N == 50);
  CHECK(c.config.switch_delta == 1e-4);
  CHECK(c.config.tie_rule == TieRule::PreferV);
  CHECK(c.out_path == "/tmp/run.csv");

  Campaign d = parse_str("solvers = map\n");
  CHECK(d.gen.family == GenFamily::Uniform);
  CHECK(d.gen.n == 1);
  CHECK(d.trials == 1);
  CHECK(d.config.epsilon == 1e-6);
  CHECK_FALSE(d.config.max_iter.has_value());
  CHECK(d.config.tie_rule == TieRule::PreferU);
  CHECK(d.out_path.empty());
  CHECK(parse_str("solvers = map\ntie = prefer-v\n").config.tie_rule ==
        TieRule::PreferV);
  CHECK(parse_str("family = gaussian-rect\nm = 12\nsolvers = map\n").gen.m == 12);
}

TEST_CASE("campaign config rejections") {
  CHECK_THROWS_AS(parse_str(""), ParseError);  // no solvers
  CHECK_THROWS_AS(parse_str("solvers = map\nfoo = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nfamily = cauchy\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = newton\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nalpha = 4\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nn = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nm = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\ntrials = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\neps = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\neps = fast\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nmax_iter = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nmax_iter = 2.5\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\ngamma = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nN = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\ndelta = -1\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\ntie = both\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\njust a line\n"), ParseError);
  CHECK_THROWS_AS(parse_str("solvers = map\nn =\n"), ParseError);
}

TEST_CASE("campaign config file helper") {
  const std::string path = "/tmp/ave_test_campaign.cfg";
  {
    std::ofstream os(path);
    os << "solvers = map\nn = 3\ntrials = 2\nseed = 4\n";
  }
  Campaign c = parse_campaign_file(path);
  CHECK(c.gen.n == 3);
  CHECK(c.trials == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_campaign_file("/tmp/ave_does_not_exist.cfg"), ParseError);
}

TEST_CASE("campaign execution and aggregation") {
  Campaign c;
  c.gen = {GenFamily::Uniform, 6, 0, 0, 2};
  c.trials = 5;
  c.solvers = {SolverKind::Map, SolverKind::Gnm, SolverKind::Picard,
               SolverKind::Gsm};
  std::ostringstream log;
  CampaignResult res = run_campaign(c, &log);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.records.size() == 20);
  for (std::size_t s = 0; s < res.rows.size(); ++s) {
    const CampaignRow& row = res.rows[s];
    CHECK(row.solver == c.solvers[s]);
    CHECK(row.trials == 5);
    CHECK(row.successes >= 0);
    CHECK(row.successes <= 5);
    CHECK(row.success_rate == doctest::Approx(row.successes / 5.0));
    CHECK(row.successes + row.n_maxiter + row.n_fixedpoint + row.n_singular +
              row.n_nogsmroot ==
          5);
    if (row.successes > 0) CHECK(row.avg_iters >= 0);
  }
  // map always solves these planted sv-gap instances
  CHECK(res.rows[0].successes == 5);
  // per-trial records arrive in trial-major, solver-minor order
  for (int t = 0; t < 5; ++t)
    for (int s = 0; s < 4; ++s) {
      const TrialRecord& rec = res.records[static_cast<std::size_t>(4 * t + s)];
      CHECK(rec.trial == t);
      CHECK(rec.solver == c.solvers[static_cast<std::size_t>(s)]);
    }
  const std::string log_text = log.str();
  CHECK(log_text.find("[trial 1/5] map:") != std::string::npos);
  CHECK(log_text.find("gsm:") != std::string::npos);

  Campaign bad = c;
  bad.trials = 0;
  CHECK_THROWS_AS(run_campaign(bad), BadShape);
  bad = c;
  bad.solvers.clear();
  CHECK_THROWS_AS(run_campaign(bad), BadShape);

  // shape preconditions propagate
  Campaign rect;
  rect.gen = {GenFamily::GaussianRect, 3, 7, 0, 2};
  rect.trials = 1;
  rect.solvers = {SolverKind::Gnm};
  CHECK_THROWS_AS(run_campaign(rect), BadShape);
}

TEST_CASE("csv rendering") {
  Campaign c;
  c.gen = {GenFamily::Uniform, 6, 0, 0, 2};
  c.trials = 3;
  c.solvers = {SolverKind::Map};
  std::string csv = render_csv(run_campaign(c));
  std::istringstream is(csv);
  std::string header, row;
  REQUIRE(std::getline(is, header));
  CHECK(header ==
        "solver,trials,successes,success_rate,avg_time_s,avg_iters,"
        "n_maxiter,n_fixedpoint,n_singular,n_nogsmroot");
  REQUIRE(std::getline(is, row));
  CHECK(row.rfind("map,3,", 0) == 0);
  CHECK_FALSE(std::getline(is, row));

  // zero successes render averages as "-"
  Campaign hard;
  hard.gen = {GenFamily::PsdGram, 50, 0, 0, 31};
  hard.trials = 2;
  hard.solvers = {SolverKind::Map};
  hard.config.max_iter = 5;
  std::string dashes = render_csv(run_campaign(hard));
  CHECK(dashes.find(",-,-,") != std::string::npos);
  CHECK(dashes.find("map,2,0,0,") != std::string::npos);
}

TEST_CASE("campaigns are deterministic apart from wallclock") {
  Campaign c;
  c.gen = {GenFamily::PsdGram, 10, 0, 0, 77};
  c.trials = 4;
  c.solvers = {SolverKind::Map, SolverKind::MapLs, SolverKind::Gsm};
  const std::string once = render_csv(run_campaign(c));
  const std::string twice = render_csv(run_campaign(c));
  CHECK(strip_time_column(once) == strip_time_column(twice));
}
