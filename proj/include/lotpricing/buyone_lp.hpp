#pragma once

#include "lotpricing/simplex.hpp"
#include "lotpricing/types.hpp"

namespace lotpricing {

// Variable layout of the menu-design program: consumer j owns a block of
// n probability variables followed by its price variable.
struct BuyOneLpIndex {
  int n = 0;  // items
  int m = 0;  // consumer types

  int x_index(int j, int i) const { return j * (n + 1) + i; }
  int z_index(int j) const { return j * (n + 1) + n; }
  int var_count() const { return m * (n + 1); }
};

BuyOneLpIndex buy_one_index(const Instance& inst);

// One lottery (x_j, z_j) per consumer type j; maximize sum_j weight_j * z_j
// subject to, for every j:
//   sum_i x_ji <= 1                                   (valid lottery)
//   sum_i v_ji x_ji - z_j >= 0                        (j accepts its lottery)
//   sum_i v_ji x_ji - z_j >= sum_i v_ji x_ki - z_k    (j prefers it to k's)
// with all variables nonnegative.
LinearProgram build_buy_one_lp(const Instance& inst);

struct BuyOneSolveResult {
  LotteryMenu menu;
  double revenue;       // LP objective
  LpSolution solution;  // raw variable values
};

// Optimal single-purchase lottery menu.  The returned menu carries one
// lottery per consumer type (exact duplicates removed) plus the null lottery;
// re-evaluating buy_one_revenue on it reproduces `revenue` up to solver
// tolerance.  Throws std::runtime_error if the program fails to solve.
BuyOneSolveResult solve_optimal_buy_one(const Instance& inst, const SimplexOptions& opt = {});

// Variant that forces total probability exactly 1 on the lottery of every
// consumer that pays anything.  The buyer set is discovered by an
// unconstrained solve and shrunk until stable, so consumers best left empty-
// handed are not dragged in.  Menus from this variant suit the two-item
// rounding scheme, whose geometry covers only full-allocation lotteries.
BuyOneSolveResult solve_full_allocation_buy_one(const Instance& inst,
                                                const SimplexOptions& opt = {});

}  // namespace lotpricing
