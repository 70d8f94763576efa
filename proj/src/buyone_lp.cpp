#include "lotpricing/buyone_lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lotpricing {

BuyOneLpIndex buy_one_index(const Instance& inst) {
  return BuyOneLpIndex{inst.n(), static_cast<int>(inst.consumers().size())};
}

LinearProgram build_buy_one_lp(const Instance& inst) {
  const BuyOneLpIndex idx = buy_one_index(inst);
  const int n = idx.n, m = idx.m;
  const auto& consumers = inst.consumers();

  LinearProgram lp;
  lp.objective.assign(idx.var_count(), 0.0);
  for (int j = 0; j < m; ++j) lp.objective[idx.z_index(j)] = consumers[j].weight;

  lp.constraints.reserve(static_cast<std::size_t>(m) * (m + 1));
  for (int j = 0; j < m; ++j) {
    LinearConstraint feas;
    feas.coeffs.assign(idx.var_count(), 0.0);
    for (int i = 0; i < n; ++i) feas.coeffs[idx.x_index(j, i)] = 1.0;
    feas.rel = Relation::LessEq;
    feas.rhs = 1.0;
    lp.constraints.push_back(std::move(feas));
  }
  for (int j = 0; j < m; ++j) {
    LinearConstraint ir;
    ir.coeffs.assign(idx.var_count(), 0.0);
    for (int i = 0; i < n; ++i) ir.coeffs[idx.x_index(j, i)] = consumers[j].values[i];
    ir.coeffs[idx.z_index(j)] = -1.0;
    ir.rel = Relation::GreaterEq;
    ir.rhs = 0.0;
    lp.constraints.push_back(std::move(ir));
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (j == k) continue;
      LinearConstraint ic;
      ic.coeffs.assign(idx.var_count(), 0.0);
      for (int i = 0; i < n; ++i) {
        ic.coeffs[idx.x_index(j, i)] += consumers[j].values[i];
        ic.coeffs[idx.x_index(k, i)] -= consumers[j].values[i];
      }
      ic.coeffs[idx.z_index(j)] = -1.0;
      ic.coeffs[idx.z_index(k)] = 1.0;
      ic.rel = Relation::GreaterEq;
      ic.rhs = 0.0;
      lp.constraints.push_back(std::move(ic));
    }
  }
  return lp;
}

namespace {

// Turns raw LP variables into a menu: clamp rounding drift, drop exact
// duplicates, let the menu constructor add the null entry.  With snap_full
// set, lotteries the solver pinned to total probability 1 (within its
// feasibility tolerance) are rescaled so they hit 1 exactly; downstream
// transformations demand full allocation to a much tighter tolerance than
// the solver works at.
LotteryMenu menu_from_solution(const Instance& inst, const LpSolution& sol,
                               const std::set<int>* keep, bool snap_full = false) {
  const BuyOneLpIndex idx = buy_one_index(inst);
  std::vector<Lottery> lots;
  for (int j = 0; j < idx.m; ++j) {
    if (keep && !keep->count(j)) continue;
    std::vector<double> probs(idx.n);
    double sum = 0.0;
    for (int i = 0; i < idx.n; ++i) {
      probs[i] = std::clamp(sol.values[idx.x_index(j, i)], 0.0, 1.0);
      sum += probs[i];
    }
    if (sum > 1.0 || (snap_full && sum >= 0.5))
      for (double& p : probs) p /= sum;
    Lottery lot(std::move(probs), std::max(0.0, sol.values[idx.z_index(j)]));
    if (std::find(lots.begin(), lots.end(), lot) == lots.end()) lots.push_back(std::move(lot));
  }
  return LotteryMenu(inst.n(), std::move(lots));
}

LpSolution solve_or_throw(const LinearProgram& lp, const SimplexOptions& opt) {
  LpSolution sol = solve_lp(lp, opt);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("buy-one program did not solve to optimality");
  return sol;
}

}  // namespace

BuyOneSolveResult solve_optimal_buy_one(const Instance& inst, const SimplexOptions& opt) {
  LpSolution sol = solve_or_throw(build_buy_one_lp(inst), opt);
  LotteryMenu menu = menu_from_solution(inst, sol, nullptr);
  return BuyOneSolveResult{std::move(menu), sol.objective, std::move(sol)};
}

BuyOneSolveResult solve_full_allocation_buy_one(const Instance& inst, const SimplexOptions& opt) {
  const BuyOneLpIndex idx = buy_one_index(inst);
  LpSolution sol = solve_or_throw(build_buy_one_lp(inst), opt);

  std::set<int> buyers;
  for (int j = 0; j < idx.m; ++j)
    if (sol.values[idx.z_index(j)] > 1e-9) buyers.insert(j);

  for (int round = 0; round <= idx.m; ++round) {
    LinearProgram lp = build_buy_one_lp(inst);
    for (int j : buyers) {
      LinearConstraint full;
      full.coeffs.assign(idx.var_count(), 0.0);
      for (int i = 0; i < idx.n; ++i) full.coeffs[idx.x_index(j, i)] = 1.0;
      full.rel = Relation::Equal;
      full.rhs = 1.0;
      lp.constraints.push_back(std::move(full));
    }
    sol = solve_or_throw(lp, opt);

    std::set<int> still;
    for (int j : buyers)
      if (sol.values[idx.z_index(j)] > 1e-9) still.insert(j);
    if (still == buyers) break;
    buyers = std::move(still);
  }

  LotteryMenu menu = menu_from_solution(inst, sol, &buyers, /*snap_full=*/true);
  return BuyOneSolveResult{std::move(menu), sol.objective, std::move(sol)};
}

}  // namespace lotpricing
