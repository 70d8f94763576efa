#include "lotpricing/oracles.hpp"

#include "lotpricing/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lotpricing {

namespace {

// Finite price candidates, shared by every item: all distinct consumer
// values plus the caller's extras, ascending; +inf is appended last so that
// lexicographic index order matches lexicographic price order.  Sharing one
// set across items keeps every uniform pricing inside the grid.
std::vector<std::vector<double>> per_item_candidates(
    const Instance& inst, const std::vector<double>& extras) {
  std::set<double> s(extras.begin(), extras.end());
  for (const ConsumerType& c : inst.consumers())
    for (double v : c.values) s.insert(v);
  std::vector<double> shared(s.begin(), s.end());
  shared.push_back(kInfinitePrice);
  return std::vector<std::vector<double>>(inst.n(), shared);
}

}  // namespace

double brute_force_grid_size(const Instance& inst, const std::vector<double>& extras) {
  double total = 1.0;
  for (const auto& c : per_item_candidates(inst, extras)) total *= static_cast<double>(c.size());
  return total;
}

BestPricing brute_force_item_pricing(const Instance& inst,
                                     const std::vector<double>& extras, double guard) {
  const auto cands = per_item_candidates(inst, extras);
  double total = 1.0;
  for (const auto& c : cands) total *= static_cast<double>(c.size());
  if (total > guard)
    throw std::runtime_error("price grid too large for exhaustive search");

  const int n = inst.n();
  const auto& consumers = inst.consumers();
  const int m = static_cast<int>(consumers.size());
  const double tol = kDefaultTol;

  std::vector<std::size_t> idx(n, 0);
  std::vector<double> prices(n);
  for (int i = 0; i < n; ++i) prices[i] = cands[i][0];

  // The odometer steps the last item's price fastest, so cache each
  // consumer's exact choice over items 0..n-2 (best utility plus the
  // payment the tie rule picks) and refresh it only on a carry.
  std::vector<double> head_u(m), head_pay(m);
  auto refresh_heads = [&]() {
    for (int c = 0; c < m; ++c) {
      const auto& vals = consumers[c].values;
      double bu = -kInfinitePrice;
      for (int i = 0; i + 1 < n; ++i)
        if (!std::isinf(prices[i])) bu = std::max(bu, vals[i] - prices[i]);
      double pay = -1.0;
      for (int i = 0; i + 1 < n; ++i) {
        if (std::isinf(prices[i])) continue;
        if (vals[i] - prices[i] >= bu - tol && prices[i] > pay) pay = prices[i];
      }
      head_u[c] = bu;
      head_pay[c] = pay;
    }
  };
  refresh_heads();

  std::vector<std::size_t> best_idx = idx;
  double best_rev = -1.0;
  for (;;) {
    const double q = prices[n - 1];
    double rev = 0.0;
    for (int c = 0; c < m; ++c) {
      const ConsumerType& cons = consumers[c];
      double pay;
      if (std::isinf(q)) {
        pay = (head_u[c] >= -tol) ? head_pay[c] : 0.0;
      } else {
        const double uq = cons.values[n - 1] - q;
        if (uq > head_u[c] + tol) {
          pay = (uq >= -tol) ? q : 0.0;
        } else if (uq < head_u[c] - tol) {
          pay = (head_u[c] >= -tol) ? head_pay[c] : 0.0;
        } else {
          // The last item ties the cached head; rerun the exact rule on
          // the whole pricing.
          double bu = -kInfinitePrice;
          for (int i = 0; i < n; ++i)
            if (!std::isinf(prices[i])) bu = std::max(bu, cons.values[i] - prices[i]);
          if (bu < -tol) {
            pay = 0.0;
          } else {
            double pp = -1.0;
            for (int i = 0; i < n; ++i) {
              if (std::isinf(prices[i])) continue;
              if (cons.values[i] - prices[i] >= bu - tol && prices[i] > pp) pp = prices[i];
            }
            pay = pp;
          }
        }
      }
      rev += cons.weight * pay;
    }
    if (rev > best_rev) {
      best_rev = rev;
      best_idx = idx;
    }

    // Odometer over the candidate grid, last item fastest.
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == cands[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
    for (int i = pos; i < n; ++i) prices[i] = cands[i][idx[i]];
    if (pos < n - 1) refresh_heads();
  }

  std::vector<double> best_prices(n);
  for (int i = 0; i < n; ++i) best_prices[i] = cands[i][best_idx[i]];
  return BestPricing{ItemPricing(std::move(best_prices)), best_rev};
}

BestUniformPrice best_uniform_price(const Instance& inst) {
  std::set<double> values;
  for (const ConsumerType& c : inst.consumers())
    for (double v : c.values) values.insert(v);

  BestUniformPrice best{kInfinitePrice, -1.0};
  for (double p : values) {
    double rev = item_pricing_revenue(inst, ItemPricing(std::vector<double>(inst.n(), p)));
    if (rev > best.revenue) best = {p, rev};
  }
  if (best.revenue < 0.0) best = {kInfinitePrice, 0.0};  // no consumers have values
  return best;
}

namespace {

struct Candidate {
  Bundle bundle;
  double payment;
};

double bundle_price(const LotteryMenu& menu, const Bundle& b) {
  double total = 0.0;
  for (const BundleEntry& e : b.entries) total += e.copies * menu.lotteries()[e.lottery].price();
  return total;
}

// All multisets of size 1..max_mix over `pool`, appended to `out`.
void enumerate_mixes(const std::vector<std::size_t>& pool, std::size_t from,
                     int remaining, Bundle& current, std::vector<Bundle>& out) {
  if (!current.entries.empty()) out.push_back(current);
  if (remaining == 0) return;
  for (std::size_t i = from; i < pool.size(); ++i) {
    if (!current.entries.empty() && current.entries.back().lottery == pool[i]) {
      ++current.entries.back().copies;
    } else {
      current.entries.push_back({pool[i], 1});
    }
    enumerate_mixes(pool, i, remaining - 1, current, out);
    if (current.entries.back().copies > 1) {
      --current.entries.back().copies;
    } else {
      current.entries.pop_back();
    }
  }
}

}  // namespace

BundleChoiceResult bounded_bundle_choice(const ConsumerType& c, const LotteryMenu& menu,
                                         int max_copies, int max_mix, int top_c,
                                         double tol) {
  if (max_copies < 1 || max_mix < 1 || top_c < 1)
    throw std::invalid_argument("search bounds must be positive");

  std::vector<std::size_t> non_null;
  for (std::size_t l = 0; l < menu.lotteries().size(); ++l)
    if (!menu.lotteries()[l].is_null()) non_null.push_back(l);

  std::vector<Bundle> candidates;
  candidates.push_back({});  // the empty bundle anchors utility at 0
  for (std::size_t l : non_null)
    for (int k = 1; k <= max_copies; ++k) candidates.push_back({{{l, k}}});

  // Multisets over the lotteries most attractive in isolation.
  std::vector<std::size_t> ranked = non_null;
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return buy_one_utility(c, menu.lotteries()[a]) > buy_one_utility(c, menu.lotteries()[b]);
  });
  if (static_cast<int>(ranked.size()) > top_c) ranked.resize(top_c);
  std::sort(ranked.begin(), ranked.end());
  Bundle scratch;
  enumerate_mixes(ranked, 0, max_mix, scratch, candidates);

  BundleChoiceResult best{{}, 0.0, 0.0};
  for (const Bundle& b : candidates) {
    double u = bundle_utility(c, menu, b);
    double pay = bundle_price(menu, b);
    if (u > best.utility + tol || (u >= best.utility - tol && pay > best.payment)) {
      best = {b, pay, u};
    }
  }
  return best;
}

double buy_many_revenue_bounded(const Instance& inst, const LotteryMenu& menu,
                                int max_copies, int max_mix, int top_c, double tol) {
  double total = 0.0;
  for (const ConsumerType& c : inst.consumers())
    total += c.weight * bounded_bundle_choice(c, menu, max_copies, max_mix, top_c, tol).payment;
  return total;
}

namespace {

std::vector<std::vector<double>> grid_prob_vectors(int n, double resolution) {
  std::vector<double> axis;
  for (int k = 0;; ++k) {
    double v = k * resolution;
    if (v >= 1.0 - 1e-12) break;
    axis.push_back(v);
  }
  axis.push_back(1.0);

  std::vector<std::vector<double>> out;
  if (n == 1) {
    for (double a : axis) out.push_back({a});
  } else {
    for (double a : axis)
      for (double b : axis)
        if (a + b <= 1.0 + 1e-12) out.push_back({a, b});
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

MenuSearchResult grid_lottery_search(const Instance& inst, double resolution) {
  const int m = static_cast<int>(inst.consumers().size());
  if (m > 2 || inst.n() > 2)
    throw std::invalid_argument("grid search handles at most 2 consumers and 2 items");
  if (!(resolution > 0.0) || resolution > 1.0)
    throw std::invalid_argument("resolution must be in (0,1]");

  const auto grid = grid_prob_vectors(inst.n(), resolution);
  MenuSearchResult best{LotteryMenu(inst.n(), {}), 0.0};

  auto consider = [&](std::vector<Lottery> lots) {
    LotteryMenu menu(inst.n(), std::move(lots));
    double rev = buy_one_revenue(inst, menu);
    if (rev > best.revenue) best = {std::move(menu), rev};
  };

  if (m == 1) {
    const ConsumerType& c = inst.consumers()[0];
    for (const auto& phi : grid)
      consider({Lottery(phi, std::max(0.0, dot(phi, c.values)))});
    return best;
  }

  const ConsumerType& c1 = inst.consumers()[0];
  const ConsumerType& c2 = inst.consumers()[1];
  for (const auto& phi1 : grid) {
    for (const auto& phi2 : grid) {
      // For a fixed pair of allocations, revenue peaks where one price binds
      // participation and the other binds the better-off consumer's
      // indifference between the two entries; try both assignments.
      double full1 = dot(phi1, c1.values);
      double full2 = dot(phi2, c2.values);
      double p1a = full1;
      double p2a = std::min(full2, p1a + dot(phi2, c2.values) - dot(phi1, c2.values));
      double p2b = full2;
      double p1b = std::min(full1, p2b + dot(phi1, c1.values) - dot(phi2, c1.values));
      consider({Lottery(phi1, std::max(0.0, p1a)), Lottery(phi2, std::max(0.0, p2a))});
      consider({Lottery(phi1, std::max(0.0, p1b)), Lottery(phi2, std::max(0.0, p2b))});
    }
  }
  return best;
}

}  // namespace lotpricing
