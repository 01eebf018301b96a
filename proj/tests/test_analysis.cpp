#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ave/analysis.hpp"
#include "ave/generators.hpp"

using namespace ave;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

SplitPoint split(std::initializer_list<double> u, std::initializer_list<double> v) {
  return {vec(u), vec(v)};
}

AveProblem scalar_problem(double a, double b, double c) {
  Matrix A(1, 1), B(1, 1);
  A << a;
  B << b;
  return make_problem(A, B, vec({c}));
}

AveProblem desk_2x2() {
  Matrix A(2, 2);
  A << 3, -8, 3, 0;
  return make_problem(A, -Matrix::Identity(2, 2), vec({6 / kSqrt2, 9 / kSqrt2}));
}

// A = [[1,2],[3,4]], B = -I: degenerate Q with spurious fixed points inside
// Omega; c chosen so x* = (-3,-2)/sqrt(2) solves the equation.
AveProblem degenerate_2x2() {
  Matrix A(2, 2);
  A << 1, 2, 3, 4;
  return make_problem(A, -Matrix::Identity(2, 2),
                      vec({-10 / kSqrt2, -19 / kSqrt2}));
}

// All elements of the B-subdifferential of Psi at w (cartesian product of the
// per-coordinate sets).
std::vector<SplitPoint> enumerate_subgradients(const SplitPoint& w) {
  const Index n = w.size();
  std::vector<std::vector<Eigen::Vector2d>> per(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    per[static_cast<std::size_t>(i)] = psi_subdiff(w.u(i), w.v(i));
  std::vector<SplitPoint> out{SplitPoint::Zero(n)};
  for (Index i = 0; i < n; ++i) {
    std::vector<SplitPoint> next;
    for (const SplitPoint& g : out)
      for (const Eigen::Vector2d& gi : per[static_cast<std::size_t>(i)]) {
        SplitPoint h = g;
        h.u(i) = gi(0);
        h.v(i) = gi(1);
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

bool same_point_set(std::vector<SplitPoint> a, std::vector<SplitPoint> b) {
  if (a.size() != b.size()) return false;
  for (const SplitPoint& pa : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const SplitPoint& pb) {
      return distance(pa, pb) <= 1e-12;
    });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("pairwise merit function and its subdifferential") {
  CHECK(psi(0, 3) == 0);
  CHECK(psi(-1, -1) == doctest::Approx(1).epsilon(1e-15));
  CHECK(psi(2, 2) == doctest::Approx(2).epsilon(1e-15));

  auto g0 = psi_subdiff(0, 3);
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].norm() == 0);
  auto gn = psi_subdiff(-1, -1);
  REQUIRE(gn.size() == 1);
  CHECK((gn[0] - Eigen::Vector2d(-1, -1)).norm() <= 1e-15);
  auto gt = psi_subdiff(2, 2);
  REQUIRE(gt.size() == 2);
  CHECK(same_point_set({split({gt[0](0)}, {gt[0](1)}), split({gt[1](0)}, {gt[1](1)})},
                       {split({2}, {0}), split({0}, {2})}));

  // psi vanishes exactly on the complementarity set.
  const double grid[] = {-2, -1, -0.5, 0, 0.5, 1, 2};
  for (double s : grid)
    for (double t : grid) {
      const bool in_M = s >= 0 && t >= 0 && s * t == 0;
      CHECK(psi(s, t) >= 0);
      CHECK((psi(s, t) == 0) == in_M);
    }
}

TEST_CASE("subgradient identities: norm and inner product") {
  Rng rng(83);
  int samples = 0;
  auto check_pair = [&](double s, double t) {
    for (const Eigen::Vector2d& g : psi_subdiff(s, t)) {
      CHECK(g.squaredNorm() == doctest::Approx(2 * psi(s, t)).epsilon(1e-12));
      const double ip = g(0) * s + g(1) * t;
      CHECK(2 * psi(s, t) <= ip + 1e-12);
      // ... and every subgradient step lands on the complementarity set.
      const double ps = s - g(0), pt = t - g(1);
      CHECK(psi(ps, pt) <= 1e-15);
      ++samples;
    }
  };
  for (int rep = 0; rep < 200; ++rep) {
    const double s = rng.uniform(-3, 3);
    check_pair(s, rng.uniform(-3, 3));
    check_pair(s, s);  // exercise both tie elements
  }
  check_pair(0, 0);
  check_pair(0, -2);
  check_pair(-2, 0);
  CHECK(samples >= 400);
}

TEST_CASE("merit evaluation matches the projection") {
  MeritEval zero = merit(split({2, 0}, {0, 1}));
  CHECK(zero.value == 0);
  CHECK(zero.subgradient.norm() == 0);
  CHECK(zero.tie_count == 0);

  MeritEval neg = merit(split({-1}, {-1}));
  CHECK(neg.value == doctest::Approx(1).epsilon(1e-15));
  CHECK(distance(split({-1}, {-1}) - neg.subgradient, SplitPoint::Zero(1)) <=
        1e-15);
  CHECK(neg.tie_count == 0);

  CHECK(merit(split({2, 3}, {2, 3})).tie_count == 2);

  Rng rng(89);
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 4);
    SplitPoint w{Vector(n), Vector(n)};
    for (Index i = 0; i < n; ++i) {
      w.u(i) = rng.uniform(-2, 2);
      w.v(i) = rng.uniform01() < 0.3 ? w.u(i) : rng.uniform(-2, 2);
    }
    for (TieRule rule : {TieRule::PreferU, TieRule::PreferV}) {
      MeritEval ev = merit(w, rule);
      CHECK(distance(w - ev.subgradient, project_C2(w, rule)) <= 1e-12);
      CHECK(ev.value >= 0);
    }
  }
}

TEST_CASE("projection set equals subgradient steps") {
  Rng rng(97);
  int ran = 0;
  for (int rep = 0; rep < 220; ++rep) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 3);
    SplitPoint w{Vector(n), Vector(n)};
    for (Index i = 0; i < n; ++i) {
      w.u(i) = rng.uniform(-2, 2);
      w.v(i) = rng.uniform01() < 0.4 ? std::abs(w.u(i)) : rng.uniform(-2, 2);
      if (rng.uniform01() < 0.4) w.u(i) = w.v(i);
    }
    std::vector<SplitPoint> steps;
    for (const SplitPoint& g : enumerate_subgradients(w)) steps.push_back(w - g);
    CHECK(same_point_set(enumerate_project_C2(w), steps));
    ++ran;
  }
  CHECK(ran >= 200);
}

TEST_CASE("Q matrix computation") {
  std::optional<Matrix> q = compute_Q(degenerate_2x2());
  REQUIRE(q.has_value());
  Matrix expect(2, 2);
  expect << -1.5, 1.5, 1, 0;
  CHECK((*q - expect).cwiseAbs().maxCoeff() <= 1e-12);

  std::optional<Matrix> q1 = compute_Q(scalar_problem(0.5, 1.5, -kSqrt2));
  REQUIRE(q1.has_value());
  CHECK((*q1)(0, 0) == doctest::Approx(-2).epsilon(1e-12));

  Matrix A(2, 2);
  A << 1, 2, 3, 4;
  std::optional<Matrix> qi =
      compute_Q(make_problem(A, Matrix::Zero(2, 2), vec({1, 1})));
  REQUIRE(qi.has_value());
  CHECK((*qi - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(compute_Q(gen_example3(3, 2, 1).problem), BadShape);
  // A - B singular: condition estimate blows up, Q reported absent.
  Matrix I2 = Matrix::Identity(2, 2);
  CHECK_FALSE(compute_Q(make_problem(I2, I2, vec({1, 1}))).has_value());
}

TEST_CASE("principal minor tests") {
  Matrix degenerate(2, 2);
  degenerate << -1.5, 1.5, 1, 0;
  CHECK(is_nondegenerate(degenerate) == TriState::No);
  CHECK(is_p_matrix(degenerate) == TriState::No);

  Matrix I3 = Matrix::Identity(3, 3);
  CHECK(is_nondegenerate(I3) == TriState::Yes);
  CHECK(is_p_matrix(I3) == TriState::Yes);

  Matrix m1(1, 1);
  m1 << -2;
  CHECK(is_nondegenerate(m1) == TriState::Yes);
  CHECK(is_p_matrix(m1) == TriState::No);

  CHECK(is_nondegenerate(Matrix::Identity(13, 13)) == TriState::Skipped);
  CHECK(is_p_matrix(I3, 2) == TriState::Skipped);
}

TEST_CASE("singular value gap") {
  Matrix I2 = Matrix::Identity(2, 2);
  CHECK(sv_gap(2 * I2, I2) == doctest::Approx(1).epsilon(1e-12));
  CHECK(sv_gap(I2, 2 * I2) == doctest::Approx(-1).epsilon(1e-12));
  for (std::uint64_t s : {1ull, 2ull, 3ull}) {
    GeneratedInstance gi = gen_example1(6, 0, s);
    CHECK(sv_gap(gi.problem.A, gi.problem.B) > 0);
  }
}

TEST_CASE("structure report") {
  StructureReport desk = analyze_structure(desk_2x2());
  REQUIRE(desk.Q.has_value());
  CHECK(desk.p_matrix == TriState::Yes);
  CHECK(desk.nondegenerate == TriState::Yes);
  CHECK(desk.unique_solution_certified);
  CHECK(desk.sv_gap > 0);

  StructureReport deg = analyze_structure(degenerate_2x2());
  CHECK(deg.nondegenerate == TriState::No);
  CHECK(deg.p_matrix == TriState::No);
  CHECK_FALSE(deg.unique_solution_certified);

  Matrix I2 = Matrix::Identity(2, 2);
  StructureReport absent = analyze_structure(make_problem(I2, I2, vec({1, 1})));
  CHECK_FALSE(absent.Q.has_value());
  CHECK(absent.nondegenerate == TriState::Skipped);
  CHECK(absent.p_matrix == TriState::Skipped);

  // sv_gap > 0 => P-matrix => nondegenerate, across random instances.
  for (int k = 0; k < 50; ++k) {
    Rng rng = Rng::stream(5, static_cast<std::uint64_t>(k));
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    GeneratedInstance gi = gen_example1(n, 0, rng);
    StructureReport sr = analyze_structure(gi.problem);
    CHECK(sr.sv_gap > 0);
    CHECK(sr.p_matrix == TriState::Yes);
    CHECK(sr.nondegenerate == TriState::Yes);
    CHECK(sr.unique_solution_certified);
  }
}

TEST_CASE("point classification on the worked examples") {
  AveProblem desk = desk_2x2();
  SplitSpace desk_space(desk);
  PointClass sol = classify_point(desk_space, desk, to_split(vec({3 / kSqrt2, 0})));
  CHECK(sol.in_C1);
  CHECK(sol.in_C2);
  CHECK(sol.is_fixed_point);
  CHECK(sol.verdict == Verdict::Solution);

  PointClass moving = classify_point(desk_space, desk, to_split(vec({1, 1})));
  CHECK_FALSE(moving.is_fixed_point);
  CHECK(moving.verdict == Verdict::NotFixed);

  AveProblem stuck = scalar_problem(0.5, 1.5, -kSqrt2);
  SplitSpace stuck_space(stuck);
  PointClass spur = classify_point(stuck_space, stuck, split({-0.8}, {-0.4}));
  CHECK(spur.is_fixed_point);
  CHECK_FALSE(spur.in_Omega);
  CHECK_FALSE(spur.in_C2);
  CHECK(spur.verdict == Verdict::SpuriousFixedPoint);

  // Degenerate Q admits a fixed point inside Omega that is still no solution.
  AveProblem deg = degenerate_2x2();
  SplitSpace deg_space(deg);
  SolverReport run = solve_map_from(deg, split({-1, 5}, {9, 1}), {});
  CHECK(run.status == SolveStatus::FixedPointNotSolution);
  PointClass pc = classify_point(deg_space, deg, run.final_split);
  CHECK(pc.is_fixed_point);
  CHECK(pc.in_Omega);
  CHECK(pc.in_C1);
  CHECK_FALSE(pc.in_C2);
  CHECK(pc.verdict == Verdict::SpuriousFixedPoint);

  PointClass rounded = classify_point(
      deg_space, deg, split({-0.9231, 4.7026}, {9.0872, 0.6154}), 1e-3);
  CHECK(rounded.is_fixed_point);
  CHECK(rounded.in_Omega);
  CHECK(rounded.verdict == Verdict::SpuriousFixedPoint);
}

TEST_CASE("converged runs on P-matrix instances classify as solutions") {
  int converged = 0;
  for (int k = 0; k < 50; ++k) {
    Rng rng = Rng::stream(5, static_cast<std::uint64_t>(k));
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    GeneratedInstance gi = gen_example1(n, 0, rng);
    REQUIRE(analyze_structure(gi.problem).p_matrix == TriState::Yes);
    SolverConfig cfg;
    cfg.epsilon = 1e-10;
    SolverReport rep = solve_map(gi.problem, cfg);
    if (rep.status != SolveStatus::Converged) continue;
    ++converged;
    SplitSpace space(gi.problem);
    PointClass pc = classify_point(space, gi.problem, rep.final_split, 1e-6);
    CHECK(pc.verdict == Verdict::Solution);
  }
  CHECK(converged >= 40);
}

TEST_CASE("restricted kernel projector norms") {
  std::vector<int> both = complementary_columns({0}, 2);
  CHECK(both == std::vector<int>{0, 3});
  CHECK(complementary_columns({}, 2) == std::vector<int>{2, 3});
  CHECK(complementary_columns({0, 1}, 2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(complementary_columns({2}, 2), BadShape);

  // Full column set: the projector norm is 1 whenever the kernel is
  // nontrivial, and 0 when T has full column rank.
  GeneratedInstance sq = gen_example1(4, 0, std::uint64_t{9});
  SplitSpace sq_space(sq.problem);
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  CHECK(restricted_L_norm(sq_space, all) == doctest::Approx(1).epsilon(1e-9));

  GeneratedInstance wide = gen_example3(12, 5, 7);
  SplitSpace wide_space(wide.problem);
  std::vector<int> all10(10);
  for (int i = 0; i < 10; ++i) all10[i] = i;
  CHECK(restricted_L_norm(wide_space, all10) <= 1e-9);

  CHECK_THROWS_AS(restricted_L_norm(sq_space, std::vector<int>{8}), BadShape);
}

TEST_CASE("complementary column sets contract strictly") {
  double min_margin = 1e9;
  for (int k = 0; k < 30; ++k) {
    Rng rng = Rng::stream(3, static_cast<std::uint64_t>(k));
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    GeneratedInstance gi = gen_example1(n, 0, rng);
    REQUIRE(sv_gap(gi.problem.A, gi.problem.B) > 0);
    SplitSpace space(gi.problem);
    for (int t = 0; t < 10; ++t) {
      const std::uint64_t bits = rng.next_u64();
      std::vector<int> l1;
      for (int i = 0; i < n; ++i)
        if (bits >> i & 1) l1.push_back(i);
      const double nrm = restricted_L_norm(space, complementary_columns(l1, n));
      CHECK(nrm < 1 - 1e-6);
      min_margin = std::min(min_margin, 1 - nrm);
    }
  }
  CHECK(min_margin > 1e-4);
}

TEST_CASE("linear complementarity export") {
  LcpExport scalar = to_lcp(scalar_problem(2, -1, 1));
  CHECK(scalar.M(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(scalar.q(0) == doctest::Approx(-kSqrt2 / 3).epsilon(1e-12));
  SplitPoint ws = to_split(vec({1}));
  CHECK(ws.u(0) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(std::abs((scalar.M * ws.u + scalar.q)(0)) <= 1e-12);

  LcpExport deg = to_lcp(degenerate_2x2());
  Matrix expect_m(2, 2);
  expect_m << -1.5, 1, 1.5, 0;  // Q transposed
  CHECK((deg.M - expect_m).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((deg.q - vec({3, 2})).cwiseAbs().maxCoeff() <= 1e-12);
  SplitPoint wd = to_split(vec({-3 / kSqrt2, -2 / kSqrt2}));
  CHECK(wd.u.norm() <= 1e-15);
  CHECK(((deg.M * wd.u + deg.q) - wd.v).cwiseAbs().maxCoeff() <= 1e-12);

  Matrix A(2, 2);
  A << 2, 0, 0, 2;
  CHECK(to_lcp(make_problem(A, -Matrix::Identity(2, 2), Vector::Zero(2)))
            .q.norm() == 0);
  Matrix I2 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(to_lcp(make_problem(I2, I2, vec({1, 1}))), SingularSystem);
  CHECK_THROWS_AS(to_lcp(gen_example3(3, 2, 1).problem), BadShape);

  // Planted solutions map to LCP solutions: u >= 0, Mu + q = v* >= 0.
  for (std::uint64_t s : {11ull, 12ull, 13ull}) {
    GeneratedInstance gi = gen_example1(5, 0, s);
    LcpExport lcp = to_lcp(gi.problem);
    SplitPoint w = to_split(gi.x_star);
    const double scale = 1 + gi.x_star.cwiseAbs().maxCoeff();
    Vector f = lcp.M * w.u + lcp.q;
    CHECK(w.u.minCoeff() >= 0);
    CHECK((f - w.v).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    CHECK(std::abs(w.u.dot(f)) <= 1e-8 * scale * scale);
  }
}

TEST_CASE("verdict and tri-state names are stable") {
  CHECK(std::string(to_string(TriState::Yes)) == "yes");
  CHECK(std::string(to_string(TriState::No)) == "no");
  CHECK(std::string(to_string(TriState::Skipped)) == "skipped");
  CHECK(std::string(to_string(Verdict::Solution)) == "Solution");
  CHECK(std::string(to_string(Verdict::SpuriousFixedPoint)) ==
        "SpuriousFixedPoint");
  CHECK(std::string(to_string(Verdict::NotFixed)) == "NotFixed");
}
