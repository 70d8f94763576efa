#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lotpricing/buyone_lp.hpp"
#include "lotpricing/model.hpp"
#include "lotpricing/oracles.hpp"
#include "lotpricing/rng.hpp"
#include "lotpricing/simplex.hpp"

#include <cmath>
#include <vector>

using namespace lotpricing;

TEST_CASE("simplex solves tiny programs") {
  {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.constraints.push_back({{1.0}, Relation::LessEq, 3.0});
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0));
    CHECK(s.values[0] == doctest::Approx(3.0));
  }
  {
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.constraints.push_back({{1.0, 1.0}, Relation::LessEq, 1.0});
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }
  {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.constraints.push_back({{1.0}, Relation::GreaterEq, 2.0});
    lp.constraints.push_back({{1.0}, Relation::LessEq, 1.0});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  }
  {
    LinearProgram lp;
    lp.objective = {1.0, 0.0};
    lp.constraints.push_back({{-1.0, 1.0}, Relation::LessEq, 1.0});
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  }
  {
    // Equality constraints route through the artificial phase.
    LinearProgram lp;
    lp.objective = {2.0, 1.0};
    lp.constraints.push_back({{1.0, 1.0}, Relation::Equal, 2.0});
    lp.constraints.push_back({{1.0, 0.0}, Relation::LessEq, 1.5});
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.5));
    CHECK(s.values[0] == doctest::Approx(1.5));
    CHECK(s.values[1] == doctest::Approx(0.5));
  }
}

TEST_CASE("simplex agrees with certified random programs") {
  // Build programs whose optimum is known by construction: pick an interior
  // point x*, make d constraints tight at it, give the rest slack, and set
  // the objective to a positive combination of the tight rows.  Then x* is
  // optimal with value c . x*.
  SplitMix64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 2 + static_cast<int>(rng.next_below(3));
    int rows = d + 1 + static_cast<int>(rng.next_below(4));

    std::vector<double> xstar(d);
    for (double& v : xstar) v = rng.uniform(0.5, 2.0);

    std::vector<std::vector<double>> a(rows, std::vector<double>(d));
    for (auto& row : a)
      for (double& v : row) v = rng.uniform(-1.0, 1.0);

    LinearProgram lp;
    lp.objective.assign(d, 0.0);
    std::vector<double> lambda(d);
    for (int i = 0; i < rows; ++i) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += a[i][k] * xstar[k];
      double rhs = dot + (i < d ? 0.0 : rng.uniform(0.1, 1.0));
      lp.constraints.push_back({a[i], Relation::LessEq, rhs});
    }
    for (int i = 0; i < d; ++i) {
      lambda[i] = rng.uniform(0.1, 1.0);
      for (int k = 0; k < d; ++k) lp.objective[k] += lambda[i] * a[i][k];
    }

    double expect = 0.0;
    for (int k = 0; k < d; ++k) expect += lp.objective[k] * xstar[k];

    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(expect).epsilon(1e-7));
  }
}

TEST_CASE("build_buy_one_lp has the advertised shape") {
  {
    Instance inst(1, {{{2.0}, 1.0}});
    LinearProgram lp = build_buy_one_lp(inst);
    CHECK(lp.objective.size() == 2);       // x_00 and z_0
    CHECK(lp.constraints.size() == 2);     // feasibility + participation
  }
  {
    Instance inst(2, {{{1.0, 0.0}, 0.5}, {{0.0, 1.0}, 0.5}, {{1.0, 1.0}, 1.0}});
    LinearProgram lp = build_buy_one_lp(inst);
    CHECK(lp.objective.size() == 9);       // 3 * (2 + 1)
    CHECK(lp.constraints.size() == 12);    // 3 feas + 3 participation + 6 envy
  }
  {
    Instance inst(1, {{{2.0}, 0.0}});
    LinearProgram lp = build_buy_one_lp(inst);
    for (double c : lp.objective) CHECK(c == 0.0);
  }
}

TEST_CASE("optimal buy-one menu on solvable-by-hand instances") {
  {
    Instance inst(1, {{{4.0}, 1.0}});
    BuyOneSolveResult r = solve_optimal_buy_one(inst);
    CHECK(r.revenue == doctest::Approx(4.0).epsilon(1e-7));
  }
  {
    // Two symmetric single-minded consumers: sell each its item at price 4.
    Instance inst(2, {{{4.0, 0.0}, 0.5}, {{0.0, 4.0}, 0.5}});
    BuyOneSolveResult r = solve_optimal_buy_one(inst);
    CHECK(r.revenue == doctest::Approx(4.0).epsilon(1e-7));
  }
  {
    // Duplicating a consumer type is the same as doubling its weight.
    Instance once(2, {{{3.0, 1.0}, 2.0}, {{1.0, 2.0}, 1.0}});
    Instance twice(2, {{{3.0, 1.0}, 1.0}, {{3.0, 1.0}, 1.0}, {{1.0, 2.0}, 1.0}});
    double a = solve_optimal_buy_one(once).revenue;
    double b = solve_optimal_buy_one(twice).revenue;
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
}

TEST_CASE("menu from the solver re-evaluates to the LP objective") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    Instance inst = testutil::random_instance(rng, n, 4, 5.0);
    BuyOneSolveResult r = solve_optimal_buy_one(inst);
    CHECK(std::abs(buy_one_revenue(inst, r.menu) - r.revenue) <= 1e-6);
  }
}

TEST_CASE("lottery optimum dominates item pricing and stays within known factors") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    Instance inst = testutil::random_instance(rng, 2, 3, 4.0);
    double lottery = solve_optimal_buy_one(inst).revenue;
    double item = brute_force_item_pricing(inst).revenue;
    CHECK(lottery >= item - 1e-6);
    // Two items: randomized menus beat deterministic prices by less than 3x.
    CHECK(lottery <= 3.0 * item + 1e-6);
  }
  for (int trial = 0; trial < 15; ++trial) {
    // One item: a lottery menu cannot beat the best posted price.
    Instance inst = testutil::random_instance(rng, 1, 4, 4.0);
    double lottery = solve_optimal_buy_one(inst).revenue;
    double posted = best_uniform_price(inst).revenue;
    CHECK(std::abs(lottery - posted) <= 1e-6);
  }
}

TEST_CASE("full-allocation variant allocates buyers completely") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(2));
    Instance inst = testutil::random_instance(rng, n, 3, 4.0);
    BuyOneSolveResult full = solve_full_allocation_buy_one(inst);
    BuyOneSolveResult free = solve_optimal_buy_one(inst);
    CHECK(full.revenue <= free.revenue + 1e-6);
    for (const Lottery& l : full.menu.lotteries())
      if (!l.is_null()) CHECK(l.total_prob() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(buy_one_revenue(inst, full.menu) - full.revenue) <= 1e-6);
  }
}
