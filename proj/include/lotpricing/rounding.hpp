#pragma once

// Transformations from lottery menus to (distributions over) deterministic
// item pricings, plus the exhaustive derandomization step.

#include "lotpricing/types.hpp"

#include <vector>

namespace lotpricing {

// Lower envelope of the indifference lines of a two-item menu. x_star and
// y_star are the axis intercepts: the cheapest effective price at which a
// consumer interested in only one of the items can buy it through some
// lottery (+inf when no lottery covers that item).
struct IndifferencePolygon {
  double x_star = kInfinitePrice;
  double y_star = kInfinitePrice;
  std::vector<Lottery> lotteries;  // non-null supporting lotteries

  // Minimum of p - phi_x*px - phi_y*py over the supporting lotteries.
  // A phi of zero absorbs an infinite coordinate (0 * inf counts as 0),
  // matching the convention that an unpriced axis never binds.
  double slack_at(double px, double py) const;
};

IndifferencePolygon indifference_polygon(const LotteryMenu& menu);

// Single-item menus become an equivalent random deterministic price:
// after pruning to the lower convex envelope in (probability, price) space,
// consecutive envelope points j-1, j yield price
// (p_j - p_{j-1}) / (phi_j - phi_{j-1}) with probability phi_j - phi_{j-1};
// the residual probability is a no-sale (+inf) price. Expected revenue
// matches the menu's buy-one revenue exactly on every instance.
PricingDistribution round_1d(const LotteryMenu& menu);

// Shifts every consumer of a two-item instance by delta = min(best menu
// utility, v_x, v_y) on both coordinates. Requires every non-null lottery to
// allocate total probability 1. Revenue is unchanged and each shifted
// consumer either sits on an axis or derives zero utility from the menu.
Instance normalize_2d(const Instance& inst, const LotteryMenu& menu,
                      double tol = kDefaultTol);

// Factor-3 rounding for two items on a normalized instance: with weight 1/3
// the product of the two independent single-item roundings, with weight 2/3
// the single pricing (x*/2 + delta, y*/2 + delta) where delta is the menu's
// minimum slack at (x*/2, y*/2). An empty non-null menu yields the
// all-infinite pricing with weight 1.
PricingDistribution round_2d(const Instance& inst, const LotteryMenu& menu);

// Per item, the price of the cheapest lottery giving it probability at
// least 1 / (130 n^3); +inf when no lottery qualifies.
std::vector<double> base_prices(const LotteryMenu& menu, int n);

// Buy-many rounding: the full outcome distribution of the two-stage scheme.
// With weight 1/2, scale all base prices by 2^t for t uniform in
// {-1, ..., 3*floor(log2 n) + 9}; with weight 1/2, pick an item uniformly
// and price only it along the geometric ladder 130 n^3 e^j p_i with
// probability (1 - 1/e) e^-j. Ladder entries priced above every consumer's
// valuation sell nothing, so they are merged into one all-infinite outcome
// carrying the exact complement probability. Requires each non-null lottery
// to allocate total probability 1 (apply add_dummy_item first if needed).
PricingDistribution round_buy_many(const LotteryMenu& menu, const Instance& inst);

struct Derandomized {
  ItemPricing best;
  double best_revenue = 0.0;
  double expected_revenue = 0.0;
};

// Evaluates every outcome of the distribution against the instance and
// returns the best pricing (earliest outcome wins ties), its revenue, and
// the probability-weighted expected revenue. `tol` is the purchase
// tie-breaking tolerance passed through to the revenue evaluation.
Derandomized derandomize(const PricingDistribution& pd, const Instance& inst,
                         double tol = kDefaultTol);

// Rounding for instances where every consumer values all items in her
// support set equally: for each support set T present in the instance
// (uniform weight over the sets), collapse every lottery to one dimension by
// summing its probabilities over T, apply round_1d, and charge the resulting
// single price on all items. The output is the complete mixture, so no
// randomness is consumed.
PricingDistribution round_uniform_valuations(const Instance& inst,
                                             const LotteryMenu& menu);

}  // namespace lotpricing
