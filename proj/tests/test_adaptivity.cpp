#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "sda/adaptivity.hpp"
#include "sda/mesh.hpp"

using namespace sda;

namespace {

IndicatorField field_of(std::vector<Real> theta_sq) {
  IndicatorField ind;
  ind.theta_sq = std::move(theta_sq);
  return ind;
}

Real sum_of(const std::vector<Real>& v, const std::vector<int>& ids) {
  Real s = 0.0;
  for (int id : ids) s += v[id];
  return s;
}

}  // namespace

TEST_CASE("bulk marking picks minimal prefixes") {
  // uniform indicators: half the mass needs exactly half the elements
  const auto uniform = field_of(std::vector<Real>(8, 1.0));
  CHECK(mark(uniform, 0.5) == std::vector<int>{0, 1, 2, 3});

  // brute force over all subsets confirms no 3-element set reaches the bulk
  int best = 9;
  for (int mask = 0; mask < (1 << 8); ++mask) {
    Real s = 0.0;
    int card = 0;
    for (int i = 0; i < 8; ++i) {
      if (mask & (1 << i)) {
        s += 1.0;
        ++card;
      }
    }
    if (s >= 4.0) best = std::min(best, card);
  }
  CHECK(best == 4);

  // zero entries are skipped, full fraction takes every positive entry
  CHECK(mark(field_of({1.0, 0.0, 2.0, 0.0, 3.0}), 1.0) ==
        std::vector<int>{0, 2, 4});

  // one dominant element satisfies the bulk alone
  CHECK(mark(field_of({0.01, 10.0, 0.01}), 0.5) == std::vector<int>{1});
}

TEST_CASE("marking satisfies the bulk bound with a minimality certificate") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<Real> dist(0.0, 1.0);
  std::vector<Real> v(50);
  for (Real& x : v) x = dist(gen);
  const auto ind = field_of(v);

  for (const Real fraction : {0.3, 0.7, 1.0}) {
    CAPTURE(fraction);
    const std::vector<int> m = mark(ind, fraction);
    REQUIRE_FALSE(m.empty());
    CHECK(std::is_sorted(m.begin(), m.end()));
    Real total = 0.0;
    for (Real x : v) total += x;
    const Real target = fraction * total;
    const Real got = sum_of(v, m);
    CHECK(got >= target * (1.0 - 1e-14));
    // the marked set is the |M| largest values, so dropping its smallest
    // certifies that no smaller set can reach the target
    Real smallest = std::numeric_limits<Real>::max();
    for (int id : m) smallest = std::min(smallest, v[id]);
    if (fraction < 1.0) CHECK(got - smallest < target);
    for (int id : m) CHECK(v[id] > 0.0);
  }
}

TEST_CASE("marking fractions outside (0,1] are rejected") {
  const auto ind = field_of({1.0, 2.0});
  CHECK_THROWS_AS(mark(ind, 0.0), Error);
  CHECK_THROWS_AS(mark(ind, 1.2), Error);
  CHECK_THROWS_AS(mark(ind, -0.5), Error);
  CHECK(mark(field_of({0.0, 0.0}), 0.5).empty());
}

TEST_CASE("a solved-exactly problem stops the loop immediately") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  const ManufacturedCase c = make_case("zero");
  const AdaptResult result = adapt_loop(mesh, problem_of(c), AdaptConfig{});
  REQUIRE(result.records.size() == 1);
  CHECK(result.stop_reason == "theta_threshold");
  CHECK(result.records[0].theta == 0.0);
  CHECK(result.records[0].err_h_norm == 0.0);
  CHECK(result.records[0].n_marked == 0);
  CHECK(std::isnan(result.records[0].effectivity));
  CHECK(result.solution().coefficients().cwiseAbs().maxCoeff() == 0.0);
  CHECK(result.mesh->n_triangles() == mesh.n_triangles());
}

TEST_CASE("a zero iteration budget returns the initial state untouched") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  AdaptConfig config;
  config.max_iterations = 0;
  const AdaptResult result = adapt_loop(mesh, problem_of(make_case("poly")), config);
  CHECK(result.records.empty());
  CHECK(result.stop_reason == "max_iterations");
  CHECK(result.mesh->n_triangles() == mesh.n_triangles());
  CHECK_THROWS_AS(result.solution(), Error);
}

TEST_CASE("the loop refines, records and stops on its iteration budget") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  AdaptConfig config;
  config.max_iterations = 6;
  std::vector<int> seen_iters;
  std::vector<int> seen_sizes;
  const AdaptResult result = adapt_loop(
      mesh, problem_of(make_case("poly")), config,
      [&](int iter, const TwoRegionMesh& m, const DiscreteSolution& sol,
          const IndicatorField& ind) {
        seen_iters.push_back(iter);
        seen_sizes.push_back(m.n_triangles());
        CHECK(sol.coefficients().allFinite());
        CHECK(static_cast<int>(ind.theta_sq.size()) == m.n_triangles());
      });

  REQUIRE(result.records.size() == 6);
  CHECK(result.stop_reason == "max_iterations");
  CHECK(seen_iters == std::vector<int>{0, 1, 2, 3, 4, 5});
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const AdaptRecord& r = result.records[i];
    CHECK(r.iter == static_cast<int>(i));
    CHECK(std::isfinite(r.err_h_norm));
    CHECK(std::isfinite(r.effectivity));
    CHECK(r.effectivity > 0.0);
    if (i > 0) {
      CHECK(r.ndof > result.records[i - 1].ndof);
      CHECK(result.records[i - 1].n_marked > 0);
    }
  }
  CHECK(result.records.back().n_marked == 0);
  CHECK(result.records.back().theta < result.records.front().theta);
  CHECK(result.records.back().err_h_norm < result.records.front().err_h_norm);
  CHECK(std::is_sorted(seen_sizes.begin(), seen_sizes.end()));
  CHECK(result.mesh->n_triangles() == seen_sizes.back());
}

TEST_CASE("a tight dof budget stops the loop straight away") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  AdaptConfig config;
  config.dof_budget = 100;  // below the initial dof count
  const AdaptResult result = adapt_loop(mesh, problem_of(make_case("poly")), config);
  REQUIRE(result.records.size() == 1);
  CHECK(result.stop_reason == "dof_budget");
  CHECK(result.records[0].ndof >= 100);
}

TEST_CASE("a generous estimator threshold stops after one pass") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  AdaptConfig config;
  config.theta_threshold = 1e6;
  const AdaptResult result = adapt_loop(mesh, problem_of(make_case("trig")), config);
  REQUIRE(result.records.size() == 1);
  CHECK(result.stop_reason == "theta_threshold");
}

TEST_CASE("data failures surface with the iteration attached") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  AdaptProblem prob;
  prob.f_f = [](const Vec2&) -> Vec2 { throw Error("synthetic data failure"); };
  prob.f_p = [](const Vec2&) { return 0.0; };
  try {
    adapt_loop(mesh, prob, AdaptConfig{});
    FAIL("expected the data failure to propagate");
  } catch (const Error& err) {
    const std::string what = err.what();
    CHECK(what.find("iteration 0") != std::string::npos);
    CHECK(what.find("synthetic data failure") != std::string::npos);
  }
}

TEST_CASE("loop configuration is validated") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  const AdaptProblem prob = problem_of(make_case("zero"));
  AdaptConfig config;
  config.theta = 0.0;
  CHECK_THROWS_AS(adapt_loop(mesh, prob, config), Error);
  config.theta = 1.5;
  CHECK_THROWS_AS(adapt_loop(mesh, prob, config), Error);
  config = AdaptConfig{};
  config.max_iterations = -1;
  CHECK_THROWS_AS(adapt_loop(mesh, prob, config), Error);
  config = AdaptConfig{};
  config.dof_budget = 0;
  CHECK_THROWS_AS(adapt_loop(mesh, prob, config), Error);
}
