#include "lotpricing/rounding.hpp"

#include "lotpricing/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace lotpricing {

namespace {

// phi * price with the convention 0 * inf = 0: a lottery that never awards an
// item is indifferent to that item's price.
double prob_times_price(double phi, double price) {
  return phi == 0.0 ? 0.0 : phi * price;
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<Lottery> non_null_lotteries(const LotteryMenu& menu) {
  std::vector<Lottery> out;
  for (const Lottery& lot : menu.lotteries())
    if (!lot.is_null()) out.push_back(lot);
  return out;
}

void require_full_allocation(const std::vector<Lottery>& lots, double tol) {
  for (const Lottery& lot : lots)
    require(std::abs(lot.total_prob() - 1.0) <= tol,
            "every non-null lottery must allocate total probability 1");
}

}  // namespace

double IndifferencePolygon::slack_at(double px, double py) const {
  double best = kInfinitePrice;
  for (const Lottery& lot : lotteries) {
    double s = lot.price() - prob_times_price(lot.probs()[0], px) -
               prob_times_price(lot.probs()[1], py);
    best = std::min(best, s);
  }
  return best;
}

IndifferencePolygon indifference_polygon(const LotteryMenu& menu) {
  require(menu.n() == 2, "indifference polygon is defined for two items");
  IndifferencePolygon poly;
  poly.lotteries = non_null_lotteries(menu);
  for (const Lottery& lot : poly.lotteries) {
    if (lot.probs()[0] > 0.0) poly.x_star = std::min(poly.x_star, lot.price() / lot.probs()[0]);
    if (lot.probs()[1] > 0.0) poly.y_star = std::min(poly.y_star, lot.price() / lot.probs()[1]);
  }
  return poly;
}

PricingDistribution round_1d(const LotteryMenu& menu) {
  require(menu.n() == 1, "single-item rounding needs a single-item menu");

  // Gather (probability, price) points; drop zero-probability entries (never
  // preferable to opting out) and keep only the cheapest price per
  // probability level.
  std::vector<std::pair<double, double>> pts;
  for (const Lottery& lot : menu.lotteries())
    if (lot.probs()[0] > 0.0) pts.emplace_back(lot.probs()[0], lot.price());
  std::sort(pts.begin(), pts.end());
  // Lower convex envelope anchored at (0,0).  Points above the envelope are
  // beaten by an envelope point at every valuation, so removing them changes
  // no consumer's choice; what survives has strictly increasing price
  // increments per unit of probability, which the construction below needs.
  std::vector<std::pair<double, double>> env{{0.0, 0.0}};
  for (const auto& c : pts) {
    if (c.first == env.back().first) continue;  // duplicated level, cheapest kept
    while (env.size() >= 2) {
      const auto& a = env[env.size() - 2];
      const auto& b = env.back();
      double cross = (b.first - a.first) * (c.second - a.second) -
                     (b.second - a.second) * (c.first - a.first);
      if (cross <= 0.0)
        env.pop_back();
      else
        break;
    }
    // The base point never pops, so a candidate under its predecessor's
    // price still lands after it; the cross test above already removed any
    // predecessor it dominates.
    env.push_back(c);
  }

  std::vector<PricingOutcome> outcomes;
  double emitted = 0.0;
  for (std::size_t j = 1; j < env.size(); ++j) {
    double dphi = env[j].first - env[j - 1].first;
    if (dphi <= 0.0) continue;
    double price = (env[j].second - env[j - 1].second) / dphi;
    outcomes.push_back({dphi, ItemPricing({price})});
    emitted += dphi;
  }
  double residual = 1.0 - emitted;
  if (residual > 0.0) outcomes.push_back({residual, ItemPricing::all_infinite(1)});
  if (outcomes.empty()) outcomes.push_back({1.0, ItemPricing::all_infinite(1)});
  return PricingDistribution(std::move(outcomes));
}

Instance normalize_2d(const Instance& inst, const LotteryMenu& menu, double tol) {
  require(inst.n() == 2 && menu.n() == 2, "normalization is defined for two items");
  require_full_allocation(non_null_lotteries(menu), tol);

  std::vector<ConsumerType> shifted;
  shifted.reserve(inst.consumers().size());
  for (const ConsumerType& c : inst.consumers()) {
    double u = 0.0;  // the null lottery floors utility at zero
    for (const Lottery& lot : menu.lotteries()) u = std::max(u, buy_one_utility(c, lot));
    double delta = std::min({u, c.values[0], c.values[1]});
    shifted.push_back({{c.values[0] - delta, c.values[1] - delta}, c.weight});
  }
  return Instance(2, std::move(shifted));
}

PricingDistribution round_2d(const Instance& inst, const LotteryMenu& menu) {
  require(inst.n() == 2 && menu.n() == 2, "two-item rounding needs two items");
  std::vector<Lottery> lots = non_null_lotteries(menu);
  require_full_allocation(lots, kDefaultTol);

  if (lots.empty())
    return PricingDistribution({{1.0, ItemPricing::all_infinite(2)}});

  std::vector<Lottery> lx, ly;
  for (const Lottery& lot : lots) {
    lx.emplace_back(std::vector<double>{lot.probs()[0]}, lot.price());
    ly.emplace_back(std::vector<double>{lot.probs()[1]}, lot.price());
  }
  PricingDistribution dx = round_1d(LotteryMenu(1, std::move(lx)));
  PricingDistribution dy = round_1d(LotteryMenu(1, std::move(ly)));

  std::vector<PricingOutcome> outcomes;
  for (const PricingOutcome& ox : dx.outcomes())
    for (const PricingOutcome& oy : dy.outcomes())
      outcomes.push_back({ox.prob * oy.prob / 3.0,
                          ItemPricing({ox.pricing.prices()[0], oy.pricing.prices()[0]})});

  IndifferencePolygon poly = indifference_polygon(menu);
  double delta = std::max(0.0, poly.slack_at(poly.x_star / 2.0, poly.y_star / 2.0));
  outcomes.push_back(
      {2.0 / 3.0, ItemPricing({poly.x_star / 2.0 + delta, poly.y_star / 2.0 + delta})});
  return PricingDistribution(std::move(outcomes));
}

std::vector<double> base_prices(const LotteryMenu& menu, int n) {
  require(n >= 1, "item count must be positive");
  const double threshold = 1.0 / (130.0 * n * n * n);
  std::vector<double> prices(menu.n(), kInfinitePrice);
  for (const Lottery& lot : menu.lotteries())
    for (int i = 0; i < menu.n(); ++i)
      if (lot.probs()[i] >= threshold) prices[i] = std::min(prices[i], lot.price());
  return prices;
}

PricingDistribution round_buy_many(const LotteryMenu& menu, const Instance& inst) {
  const int n = inst.n();
  require(menu.n() == n, "menu and instance disagree on the item count");
  require_full_allocation(non_null_lotteries(menu), kDefaultTol);

  const std::vector<double> base = base_prices(menu, n);
  double vmax = 0.0;
  for (const ConsumerType& c : inst.consumers())
    for (double v : c.values) vmax = std::max(vmax, v);
  // Prices above this can never sell; 1e-9 absorbs the choice tolerance.
  const double dead_price = vmax * (1.0 + 1e-9) + 1e-9;

  const int k = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  const int t_count = 3 * k + 11;  // t runs over {-1, ..., 3k+9}

  std::vector<PricingOutcome> outcomes;

  // Stage one (weight 1/2): scale every base price by a common power of two.
  const double t_prob = 0.5 / t_count;
  for (int t = -1; t <= 3 * k + 9; ++t) {
    std::vector<double> prices(n);
    for (int i = 0; i < n; ++i) prices[i] = std::ldexp(base[i], t);
    outcomes.push_back({t_prob, ItemPricing(std::move(prices))});
  }

  // Stage two (weight 1/2): a uniformly chosen item priced on a geometric
  // ladder, everything else withheld.  Rungs priced beyond every valuation
  // sell nothing and are merged into one all-infinite outcome carrying the
  // bucket's exact leftover probability, so truncation loses no revenue.
  const double bucket = 0.5 / n;
  const double ladder_base = 130.0 * n * n * n;
  const double rung_weight = 1.0 - 1.0 / std::exp(1.0);
  for (int i = 0; i < n; ++i) {
    if (base[i] == 0.0) {
      // Every rung prices item i at zero; the whole bucket collapses.
      std::vector<double> prices(n, kInfinitePrice);
      prices[i] = 0.0;
      outcomes.push_back({bucket, ItemPricing(std::move(prices))});
      continue;
    }
    double emitted = 0.0;
    if (std::isfinite(base[i])) {
      for (int j = 0;; ++j) {
        double price = ladder_base * std::exp(static_cast<double>(j)) * base[i];
        if (!(price <= dead_price)) break;
        std::vector<double> prices(n, kInfinitePrice);
        prices[i] = price;
        double prob = bucket * rung_weight * std::exp(static_cast<double>(-j));
        outcomes.push_back({prob, ItemPricing(std::move(prices))});
        emitted += prob;
      }
    }
    double tail = bucket - emitted;
    if (tail > 0.0) outcomes.push_back({tail, ItemPricing::all_infinite(n)});
  }
  return PricingDistribution(std::move(outcomes));
}

Derandomized derandomize(const PricingDistribution& pd, const Instance& inst, double tol) {
  Derandomized result{ItemPricing::all_infinite(inst.n()), -1.0, 0.0};
  for (const PricingOutcome& o : pd.outcomes()) {
    double rev = item_pricing_revenue(inst, o.pricing, tol);
    result.expected_revenue += o.prob * rev;
    if (rev > result.best_revenue) {
      result.best_revenue = rev;
      result.best = o.pricing;
    }
  }
  return result;
}

PricingDistribution round_uniform_valuations(const Instance& inst, const LotteryMenu& menu) {
  require(inst.n() == menu.n(), "menu and instance disagree on the item count");

  std::set<std::vector<int>> supports;
  for (const ConsumerType& c : inst.consumers()) {
    std::vector<int> support;
    double level = 0.0;
    for (int i = 0; i < inst.n(); ++i) {
      double v = c.values[i];
      if (v == 0.0) continue;
      require(level == 0.0 || v == level,
              "every consumer must value her supported items equally");
      level = v;
      support.push_back(i);
    }
    if (!support.empty()) supports.insert(std::move(support));
  }
  if (supports.empty())
    return PricingDistribution({{1.0, ItemPricing::all_infinite(inst.n())}});

  const double set_weight = 1.0 / static_cast<double>(supports.size());
  std::vector<PricingOutcome> outcomes;
  for (const std::vector<int>& support : supports) {
    std::vector<Lottery> collapsed;
    for (const Lottery& lot : menu.lotteries()) {
      if (lot.is_null()) continue;
      double mass = 0.0;
      for (int i : support) mass += lot.probs()[i];
      collapsed.emplace_back(std::vector<double>{std::min(mass, 1.0)}, lot.price());
    }
    PricingDistribution d = round_1d(LotteryMenu(1, std::move(collapsed)));
    for (const PricingOutcome& o : d.outcomes()) {
      std::vector<double> prices(inst.n(), o.pricing.prices()[0]);
      outcomes.push_back({set_weight * o.prob, ItemPricing(std::move(prices))});
    }
  }
  return PricingDistribution(std::move(outcomes));
}

}  // namespace lotpricing
