#include "lotpricing/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lotpricing {

namespace {

void check_dims(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(what);
}

}  // namespace

double buy_one_utility(const ConsumerType& c, const Lottery& lot) {
  check_dims(static_cast<int>(c.values.size()), static_cast<int>(lot.probs().size()),
             "buy_one_utility: dimension mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < c.values.size(); ++i) v += lot.probs()[i] * c.values[i];
  return v - lot.price();
}

MenuChoice buy_one_choice(const ConsumerType& c, const LotteryMenu& menu, double tol) {
  check_dims(static_cast<int>(c.values.size()), menu.n(), "buy_one_choice: dimension mismatch");
  const auto& lots = menu.lotteries();
  std::vector<double> utilities(lots.size());
  double best_u = -kInfinitePrice;
  for (std::size_t i = 0; i < lots.size(); ++i) {
    utilities[i] = buy_one_utility(c, lots[i]);
    best_u = std::max(best_u, utilities[i]);
  }
  std::size_t pick = 0;
  double pick_price = -1.0;
  for (std::size_t i = 0; i < lots.size(); ++i) {
    if (utilities[i] >= best_u - tol && lots[i].price() > pick_price) {
      pick = i;
      pick_price = lots[i].price();
    }
  }
  return MenuChoice{pick, lots[pick].price()};
}

double buy_one_revenue(const Instance& inst, const LotteryMenu& menu, double tol) {
  check_dims(inst.n(), menu.n(), "buy_one_revenue: dimension mismatch");
  double total = 0.0;
  for (const auto& c : inst.consumers()) total += c.weight * buy_one_choice(c, menu, tol).payment;
  return total;
}

double bundle_utility(const ConsumerType& c, const LotteryMenu& menu, const Bundle& b) {
  const auto& lots = menu.lotteries();
  double total_price = 0.0;
  for (const auto& e : b.entries) {
    if (e.lottery >= lots.size()) throw std::invalid_argument("bundle: lottery index out of range");
    if (e.copies < 1) throw std::invalid_argument("bundle: copy count must be positive");
    check_dims(static_cast<int>(c.values.size()), menu.n(), "bundle_utility: dimension mismatch");
    total_price += e.copies * lots[e.lottery].price();
  }
  if (b.entries.empty()) return 0.0;

  // E[max] over the independent draws, by summing w * P[max == w] over the
  // distinct achievable values w (an unallocated draw counts as value 0).
  std::vector<double> levels = c.values;
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double expected_max = 0.0;
  double prev_cdf = 0.0;
  for (double w : levels) {
    double cdf = 1.0;  // P[every draw lands at value <= w]
    for (const auto& e : b.entries) {
      const Lottery& lot = lots[e.lottery];
      double single = 1.0 - lot.total_prob();  // allocates nothing
      for (std::size_t i = 0; i < c.values.size(); ++i)
        if (c.values[i] <= w) single += lot.probs()[i];
      single = std::clamp(single, 0.0, 1.0);
      for (int k = 0; k < e.copies; ++k) cdf *= single;
    }
    expected_max += w * (cdf - prev_cdf);
    prev_cdf = cdf;
  }
  return expected_max - total_price;
}

ItemChoice item_choice(const ConsumerType& c, const ItemPricing& pricing, double tol) {
  check_dims(static_cast<int>(c.values.size()), pricing.n(), "item_choice: dimension mismatch");
  double best_u = -kInfinitePrice;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    double p = pricing.prices()[i];
    if (std::isinf(p)) continue;
    best_u = std::max(best_u, c.values[i] - p);
  }
  if (best_u < -tol) return ItemChoice{-1, 0.0};
  int pick = -1;
  double pick_price = -1.0;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    double p = pricing.prices()[i];
    if (std::isinf(p)) continue;
    if (c.values[i] - p >= best_u - tol && p > pick_price) {
      pick = static_cast<int>(i);
      pick_price = p;
    }
  }
  return ItemChoice{pick, pick_price};
}

double item_pricing_revenue(const Instance& inst, const ItemPricing& pricing, double tol) {
  check_dims(inst.n(), pricing.n(), "item_pricing_revenue: dimension mismatch");
  double total = 0.0;
  for (const auto& c : inst.consumers()) total += c.weight * item_choice(c, pricing, tol).payment;
  return total;
}

LotteryMenu epsilon_discount(const LotteryMenu& menu, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon_discount: eps must be in [0,1)");
  std::vector<Lottery> out;
  out.reserve(menu.lotteries().size());
  for (const auto& lot : menu.lotteries()) out.emplace_back(lot.probs(), lot.price() * (1.0 - eps));
  return LotteryMenu(menu.n(), std::move(out));
}

DummyExtended add_dummy_item(const Instance& inst, const LotteryMenu& menu) {
  check_dims(inst.n(), menu.n(), "add_dummy_item: dimension mismatch");
  std::vector<ConsumerType> consumers = inst.consumers();
  for (auto& c : consumers) c.values.push_back(0.0);

  std::vector<Lottery> lots;
  lots.reserve(menu.lotteries().size());
  for (const auto& lot : menu.lotteries()) {
    std::vector<double> probs = lot.probs();
    // The null opt-out stays null; padding it would allocate the dummy item
    // to consumers who buy nothing.
    probs.push_back(lot.is_null() ? 0.0 : std::max(0.0, 1.0 - lot.total_prob()));
    lots.emplace_back(std::move(probs), lot.price());
  }
  return DummyExtended{Instance(inst.n() + 1, std::move(consumers)),
                       LotteryMenu(menu.n() + 1, std::move(lots))};
}

}  // namespace lotpricing
