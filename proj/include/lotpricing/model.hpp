#pragma once

#include "lotpricing/types.hpp"

namespace lotpricing {

// Expected utility of a single lottery: sum_i probs[i]*values[i] - price.
double buy_one_utility(const ConsumerType& c, const Lottery& lot);

struct MenuChoice {
  std::size_t index;  // position in the menu
  double payment;     // price of the chosen lottery
};

// The consumer picks a utility-maximizing lottery.  Among all entries whose
// utility is within `tol` of the maximum, the most expensive one wins; this
// seller-friendly tie rule keeps revenue well defined at indifference points.
// The null lottery guarantees the chosen utility is never below -tol.
MenuChoice buy_one_choice(const ConsumerType& c, const LotteryMenu& menu,
                          double tol = kDefaultTol);

// Weighted sum of payments when every consumer buys exactly one lottery.
double buy_one_revenue(const Instance& inst, const LotteryMenu& menu,
                       double tol = kDefaultTol);

// Exact expected utility of buying a multiset of lotteries whose draws are
// independent: E[max over sampled item values] - total price.  A lottery that
// allocates nothing contributes value 0 to the max, as does an empty bundle.
double bundle_utility(const ConsumerType& c, const LotteryMenu& menu, const Bundle& b);

struct ItemChoice {
  int item;        // -1 when the consumer buys nothing
  double payment;  // 0 when the consumer buys nothing
};

// Single-item purchase under posted prices: pick an item maximizing
// values[i] - prices[i] provided that maximum is at least -tol, breaking ties
// toward the highest price.  Items priced +infinity are never bought.
ItemChoice item_choice(const ConsumerType& c, const ItemPricing& pricing,
                       double tol = kDefaultTol);

double item_pricing_revenue(const Instance& inst, const ItemPricing& pricing,
                            double tol = kDefaultTol);

// The same menu with every price scaled by (1 - eps).  Turning indifference
// into strict preference this way costs at most an eps fraction of revenue
// under any tie-breaking rule.
LotteryMenu epsilon_discount(const LotteryMenu& menu, double eps);

// Extends the market by one worthless item and gives every lottery its
// leftover probability mass on it, so each lottery allocates with total
// probability exactly 1.  Utilities, choices and revenue are unchanged.
struct DummyExtended {
  Instance instance;
  LotteryMenu menu;
};

DummyExtended add_dummy_item(const Instance& inst, const LotteryMenu& menu);

}  // namespace lotpricing
