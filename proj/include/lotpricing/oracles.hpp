#pragma once

// Independent reference computations used to cross-check the solver and the
// constructed families: exhaustive item pricing, a uniform-price baseline,
// bounded buy-many bundle search, and a small grid search over menus.

#include "lotpricing/types.hpp"

#include <vector>

namespace lotpricing {

struct BestPricing {
  ItemPricing pricing;
  double revenue = 0.0;
};

// Exhaustive search over price vectors whose per-item candidates are that
// item's distinct consumer values, the caller's extra candidates, and +inf.
// Throws when the candidate grid exceeds `guard` combinations. Ties go to
// the lexicographically smallest price vector.
BestPricing brute_force_item_pricing(const Instance& inst,
                                     const std::vector<double>& extra_candidates = {},
                                     double guard = 1e7);

// Number of price combinations brute_force_item_pricing would enumerate;
// lets callers pick between it and the uniform-price fallback.
double brute_force_grid_size(const Instance& inst,
                             const std::vector<double>& extra_candidates = {});

struct BestUniformPrice {
  double price = 0.0;
  double revenue = 0.0;
};

// Best pricing of the form (p, ..., p) with p ranging over the distinct
// consumer values. A cheap lower bound on the brute-force optimum that
// scales to any instance.
BestUniformPrice best_uniform_price(const Instance& inst);

struct BundleChoiceResult {
  Bundle bundle;
  double payment = 0.0;
  double utility = 0.0;
};

// Restricted buy-many choice: considers the empty bundle, up to max_copies
// copies of every single lottery, and every multiset of at most max_mix
// lotteries drawn from the top_c lotteries by single-copy utility. Returns
// the utility maximizer, breaking near-ties (tol) toward the highest total
// price. Exact whenever the consumer's true optimum lies in this family.
BundleChoiceResult bounded_bundle_choice(const ConsumerType& c, const LotteryMenu& menu,
                                         int max_copies, int max_mix, int top_c,
                                         double tol = kDefaultTol);

// Weighted total payment when every consumer buys via bounded_bundle_choice.
double buy_many_revenue_bounded(const Instance& inst, const LotteryMenu& menu,
                                int max_copies, int max_mix, int top_c,
                                double tol = kDefaultTol);

struct MenuSearchResult {
  LotteryMenu menu;
  double revenue = 0.0;
};

// Exhaustive menu search for tiny instances (at most 2 consumers, 2 items):
// one lottery per consumer with probabilities on a grid of step `resolution`
// and prices completed to the participation/indifference boundaries, which
// is where the revenue of a fixed allocation peaks. Within
// O(resolution * max value * consumer count) of the true optimum, and
// monotone under grid refinement.
MenuSearchResult grid_lottery_search(const Instance& inst, double resolution);

}  // namespace lotpricing
