#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lotpricing/model.hpp"
#include "lotpricing/rng.hpp"
#include "lotpricing/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lotpricing;

namespace {

double prob_sum(const PricingDistribution& pd) {
  double s = 0.0;
  for (const PricingOutcome& o : pd.outcomes()) s += o.prob;
  return s;
}

}  // namespace

TEST_CASE("round_1d on worked examples") {
  {
    LotteryMenu menu(1, {Lottery({0.5}, 1.0), Lottery({1.0}, 3.0)});
    PricingDistribution pd = round_1d(menu);
    REQUIRE(pd.outcomes().size() == 2);
    CHECK(pd.outcomes()[0].prob == doctest::Approx(0.5));
    CHECK(pd.outcomes()[0].pricing.prices()[0] == doctest::Approx(2.0));
    CHECK(pd.outcomes()[1].prob == doctest::Approx(0.5));
    CHECK(pd.outcomes()[1].pricing.prices()[0] == doctest::Approx(4.0));

    // A consumer worth 5 pays 3 in the menu and 0.5*2 + 0.5*4 = 3 on average
    // under the pricing.
    Instance inst(1, {{{5.0}, 1.0}});
    CHECK(buy_one_revenue(inst, menu) == doctest::Approx(3.0));
    CHECK(derandomize(pd, inst).expected_revenue == doctest::Approx(3.0));
  }
  {
    LotteryMenu menu(1, {Lottery({1.0}, 2.5)});
    PricingDistribution pd = round_1d(menu);
    REQUIRE(pd.outcomes().size() == 1);
    CHECK(pd.outcomes()[0].prob == doctest::Approx(1.0));
    CHECK(pd.outcomes()[0].pricing.prices()[0] == doctest::Approx(2.5));
  }
  {
    LotteryMenu menu(1, {});
    PricingDistribution pd = round_1d(menu);
    REQUIRE(pd.outcomes().size() == 1);
    CHECK(pd.outcomes()[0].prob == doctest::Approx(1.0));
    CHECK(std::isinf(pd.outcomes()[0].pricing.prices()[0]));
  }
  {
    // A lottery above the price envelope is never bought, so dropping it
    // keeps the rounding exact.
    LotteryMenu menu(1, {Lottery({0.5}, 1.0), Lottery({0.6}, 2.5), Lottery({1.0}, 3.0)});
    PricingDistribution pd = round_1d(menu);
    REQUIRE(pd.outcomes().size() == 2);
    Instance inst(1, {{{5.0}, 1.0}, {{16.0}, 0.5}, {{1.5}, 2.0}});
    CHECK(std::abs(derandomize(pd, inst).expected_revenue - buy_one_revenue(inst, menu)) <=
          1e-9);
  }
  CHECK_THROWS_AS(round_1d(LotteryMenu(2, {})), std::invalid_argument);
}

TEST_CASE("round_1d expected revenue matches the menu exactly") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    LotteryMenu menu = testutil::random_menu(rng, 1, 8, 8.0);
    Instance inst = testutil::random_instance(rng, 1, 6, 10.0);
    PricingDistribution pd = round_1d(menu);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));
    double expected = derandomize(pd, inst).expected_revenue;
    CHECK(std::abs(expected - buy_one_revenue(inst, menu)) <= 1e-9);
  }
}

TEST_CASE("normalize_2d shifts consumers onto the axes or to zero utility") {
  LotteryMenu menu(2, {Lottery({0.5, 0.5}, 3.0)});
  Instance inst(2, {{{5.0, 5.0}, 1.0}, {{4.0, 0.0}, 1.0}, {{0.0, 0.0}, 1.0}});
  Instance norm = normalize_2d(inst, menu);
  CHECK(norm.consumers()[0].values[0] == doctest::Approx(3.0));
  CHECK(norm.consumers()[0].values[1] == doctest::Approx(3.0));
  CHECK(norm.consumers()[1].values[0] == doctest::Approx(4.0));
  CHECK(norm.consumers()[1].values[1] == doctest::Approx(0.0));
  CHECK(norm.consumers()[2].values[0] == doctest::Approx(0.0));
  CHECK(norm.consumers()[2].values[1] == doctest::Approx(0.0));

  // Partial-allocation lotteries are outside this transformation's scope.
  LotteryMenu partial(2, {Lottery({0.3, 0.3}, 1.0)});
  CHECK_THROWS_AS(normalize_2d(inst, partial), std::invalid_argument);
}

TEST_CASE("normalize_2d preserves revenue on random full-allocation menus") {
  SplitMix64 rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    LotteryMenu menu = testutil::random_full_menu(rng, 2, 4, 3.0);
    Instance inst = testutil::random_instance(rng, 2, 5, 5.0);
    Instance norm = normalize_2d(inst, menu);
    CHECK(std::abs(buy_one_revenue(norm, menu) - buy_one_revenue(inst, menu)) <= 1e-9);
    for (const ConsumerType& c : norm.consumers()) {
      double u = 0.0;
      for (const Lottery& l : menu.lotteries()) u = std::max(u, buy_one_utility(c, l));
      bool on_axis = std::min(c.values[0], c.values[1]) <= 1e-9;
      CHECK((on_axis || u <= 1e-9));
    }
  }
}

TEST_CASE("round_2d structure on a symmetric menu") {
  LotteryMenu menu(2, {Lottery({0.5, 0.5}, 2.0)});
  Instance inst = normalize_2d(Instance(2, {{{4.0, 4.0}, 1.0}}), menu);
  PricingDistribution pd = round_2d(inst, menu);
  CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));

  bool found = false;
  for (const PricingOutcome& o : pd.outcomes())
    if (std::abs(o.prob - 2.0 / 3.0) <= 1e-12) {
      CHECK(o.pricing.prices()[0] == doctest::Approx(2.0));
      CHECK(o.pricing.prices()[1] == doctest::Approx(2.0));
      found = true;
    }
  CHECK(found);

  // Revenue: the (2,2) branch sells at 2 to the shifted consumer (2,2).
  Derandomized d = derandomize(pd, inst);
  CHECK(d.expected_revenue == doctest::Approx(4.0 / 3.0));
  CHECK(d.best_revenue == doctest::Approx(2.0));
}

TEST_CASE("round_2d with a single-item lottery degenerates gracefully") {
  LotteryMenu menu(2, {Lottery({1.0, 0.0}, 2.0)});
  Instance inst(2, {{{3.0, 0.0}, 1.0}});
  PricingDistribution pd = round_2d(inst, menu);
  CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));
  // The deterministic branch slides up the indifference line to (p, inf).
  bool found = false;
  for (const PricingOutcome& o : pd.outcomes())
    if (std::abs(o.prob - 2.0 / 3.0) <= 1e-12) {
      CHECK(o.pricing.prices()[0] == doctest::Approx(2.0));
      CHECK(std::isinf(o.pricing.prices()[1]));
      found = true;
    }
  CHECK(found);

  LotteryMenu empty(2, {});
  PricingDistribution pd2 = round_2d(inst, empty);
  REQUIRE(pd2.outcomes().size() == 1);
  CHECK(std::isinf(pd2.outcomes()[0].pricing.prices()[0]));
}

TEST_CASE("round_2d keeps a third of the menu revenue") {
  SplitMix64 rng(97);
  for (int trial = 0; trial < 40; ++trial) {
    LotteryMenu menu = testutil::random_full_menu(rng, 2, 5, 3.0);
    Instance inst = testutil::random_instance(rng, 2, 5, 5.0);
    Instance norm = normalize_2d(inst, menu);
    PricingDistribution pd = round_2d(norm, menu);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-10));
    double expected = derandomize(pd, norm).expected_revenue;
    CHECK(expected >= buy_one_revenue(norm, menu) / 3.0 - 1e-6);
    // Undoing the normalization can only help a posted pricing: both item
    // values rise by the same shift, so choices persist and buyers multiply.
    for (const PricingOutcome& o : pd.outcomes())
      CHECK(item_pricing_revenue(inst, o.pricing) >=
            item_pricing_revenue(norm, o.pricing) - 1e-7);
  }
}

TEST_CASE("base_prices picks the cheapest sufficiently likely lottery") {
  {
    LotteryMenu menu(2, {Lottery({0.5, 0.5}, 2.0)});
    std::vector<double> p = base_prices(menu, 2);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(2.0));
  }
  {
    LotteryMenu menu(2, {Lottery({1.0, 0.0}, 1.5)});
    std::vector<double> p = base_prices(menu, 2);
    CHECK(p[0] == doctest::Approx(1.5));
    CHECK(std::isinf(p[1]));
  }
  {
    LotteryMenu menu(2, {Lottery({0.2, 0.8}, 3.0), Lottery({0.0, 1.0}, 5.0)});
    std::vector<double> p = base_prices(menu, 2);
    CHECK(p[1] == doctest::Approx(3.0));
  }
}

TEST_CASE("round_buy_many outcome structure") {
  {
    // Two items: the power-of-two stage has 14 outcomes, t = -1..12.
    LotteryMenu menu(2, {Lottery({1.0, 0.0}, 1.0)});
    Instance inst(2, {{{1.0, 0.0}, 1.0}});
    PricingDistribution pd = round_buy_many(menu, inst);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(pd.outcomes().size() >= 14);
    for (int t = 0; t < 14; ++t) {
      CHECK(pd.outcomes()[t].prob == doctest::Approx(0.5 / 14.0));
      CHECK(pd.outcomes()[t].pricing.prices()[0] ==
            doctest::Approx(std::ldexp(1.0, t - 1)));
      CHECK(std::isinf(pd.outcomes()[t].pricing.prices()[1]));
    }
    CHECK(pd.outcomes()[0].pricing.prices()[0] == doctest::Approx(0.5));
  }
  {
    // One item, low valuations: 11 power-of-two outcomes plus one merged
    // never-sells outcome; every ladder rung is priced out.
    LotteryMenu menu(1, {Lottery({1.0}, 1.0)});
    Instance inst(1, {{{0.5}, 1.0}});
    PricingDistribution pd = round_buy_many(menu, inst);
    CHECK(pd.outcomes().size() == 12);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    // One item with a valuation large enough to keep two ladder rungs live:
    // 130e^0 and 130e^1 are below 400, 130e^2 is not.
    LotteryMenu menu(1, {Lottery({1.0}, 1.0)});
    Instance inst(1, {{{400.0}, 1.0}});
    PricingDistribution pd = round_buy_many(menu, inst);
    CHECK(pd.outcomes().size() == 14);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-12));
    double w = 1.0 - 1.0 / std::exp(1.0);
    CHECK(pd.outcomes()[11].prob == doctest::Approx(0.5 * w));
    CHECK(pd.outcomes()[11].pricing.prices()[0] == doctest::Approx(130.0));
    CHECK(pd.outcomes()[12].prob == doctest::Approx(0.5 * w / std::exp(1.0)));
    CHECK(pd.outcomes()[12].pricing.prices()[0] == doctest::Approx(130.0 * std::exp(1.0)));
  }
}

TEST_CASE("round_buy_many probabilities always sum to one") {
  SplitMix64 rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(4));
    LotteryMenu menu = testutil::random_full_menu(rng, n, 5, 3.0);
    Instance inst = testutil::random_instance(rng, n, 4, 6.0);
    PricingDistribution pd = round_buy_many(menu, inst);
    CHECK(std::abs(prob_sum(pd) - 1.0) <= 1e-9);
  }
}

TEST_CASE("doubling prices walks each consumer down the price ladder") {
  // As the common scale on the base prices grows, a consumer's purchases
  // move to strictly cheaper base prices and weakly smaller values.
  SplitMix64 rng(131);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    LotteryMenu menu = testutil::random_full_menu(rng, n, 5, 3.0);
    Instance inst = testutil::random_instance(rng, n, 4, 6.0);
    std::vector<double> base = base_prices(menu, n);
    int k = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    for (const ConsumerType& c : inst.consumers()) {
      int prev = -1;
      for (int t = -1; t <= 3 * k + 9; ++t) {
        std::vector<double> scaled(n);
        for (int i = 0; i < n; ++i) scaled[i] = std::ldexp(base[i], t);
        ItemChoice pick = item_choice(c, ItemPricing(std::move(scaled)));
        if (pick.item < 0) continue;
        if (prev >= 0 && pick.item != prev) {
          CHECK(base[pick.item] < base[prev] + 1e-12);
          CHECK(c.values[pick.item] <= c.values[prev] + 1e-9);
        }
        prev = pick.item;
      }
    }
  }
}

TEST_CASE("derandomize reports the best and the average outcome") {
  Instance inst(1, {{{5.0}, 1.0}});
  {
    PricingDistribution pd({{1.0, ItemPricing({2.0})}});
    Derandomized d = derandomize(pd, inst);
    CHECK(d.best_revenue == doctest::Approx(2.0));
    CHECK(d.expected_revenue == doctest::Approx(2.0));
    CHECK(d.best.prices()[0] == doctest::Approx(2.0));
  }
  {
    PricingDistribution pd({{0.5, ItemPricing({1.0})}, {0.5, ItemPricing({3.0})}});
    Derandomized d = derandomize(pd, inst);
    CHECK(d.best_revenue == doctest::Approx(3.0));
    CHECK(d.expected_revenue == doctest::Approx(2.0));
    CHECK(d.best.prices()[0] == doctest::Approx(3.0));
  }
  SplitMix64 rng(139);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    LotteryMenu menu = testutil::random_full_menu(rng, n, 4, 3.0);
    Instance inst2 = testutil::random_instance(rng, n, 4, 6.0);
    Derandomized d = derandomize(round_buy_many(menu, inst2), inst2);
    CHECK(d.best_revenue >= d.expected_revenue - 1e-12);
  }
}

TEST_CASE("round_uniform_valuations with a single shared support is exact") {
  SplitMix64 rng(149);
  for (int trial = 0; trial < 25; ++trial) {
    LotteryMenu menu = testutil::random_menu(rng, 2, 5, 3.0);
    std::vector<ConsumerType> cons;
    int m = 1 + static_cast<int>(rng.next_below(4));
    for (int j = 0; j < m; ++j) {
      double v = rng.uniform(0.2, 4.0);
      cons.push_back({{v, v}, rng.uniform(0.1, 1.0)});
    }
    Instance inst(2, std::move(cons));
    PricingDistribution pd = round_uniform_valuations(inst, menu);

    // Same thing as collapsing by hand and rounding the 1-D menu.
    std::vector<Lottery> collapsed;
    for (const Lottery& l : menu.lotteries())
      if (!l.is_null())
        collapsed.emplace_back(
            std::vector<double>{std::min(l.probs()[0] + l.probs()[1], 1.0)}, l.price());
    PricingDistribution ref = round_1d(LotteryMenu(1, std::move(collapsed)));
    REQUIRE(pd.outcomes().size() == ref.outcomes().size());
    for (std::size_t i = 0; i < ref.outcomes().size(); ++i) {
      CHECK(pd.outcomes()[i].prob == doctest::Approx(ref.outcomes()[i].prob));
      CHECK(pd.outcomes()[i].pricing.prices()[0] == ref.outcomes()[i].pricing.prices()[0]);
      CHECK(pd.outcomes()[i].pricing.prices()[1] == ref.outcomes()[i].pricing.prices()[0]);
    }
    CHECK(std::abs(derandomize(pd, inst).expected_revenue - buy_one_revenue(inst, menu)) <=
          1e-9);
  }
}

TEST_CASE("round_uniform_valuations keeps a 1/2^n fraction of revenue") {
  SplitMix64 rng(151);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3;
    std::vector<std::vector<int>> supports = {{0}, {0, 1}, {1, 2}, {0, 1, 2}};
    std::vector<ConsumerType> cons;
    for (const auto& s : supports) {
      std::vector<double> values(n, 0.0);
      double v = rng.uniform(0.5, 4.0);
      for (int i : s) values[i] = v;
      cons.push_back({std::move(values), rng.uniform(0.1, 1.0)});
    }
    Instance inst(n, std::move(cons));
    LotteryMenu menu = testutil::random_menu(rng, n, 5, 3.0);
    PricingDistribution pd = round_uniform_valuations(inst, menu);
    CHECK(prob_sum(pd) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(derandomize(pd, inst).expected_revenue >=
          buy_one_revenue(inst, menu) / 8.0 - 1e-9);
  }
}

TEST_CASE("round_uniform_valuations edge cases") {
  Instance zeros(2, {{{0.0, 0.0}, 1.0}});
  LotteryMenu menu(2, {Lottery({0.5, 0.5}, 1.0)});
  PricingDistribution pd = round_uniform_valuations(zeros, menu);
  REQUIRE(pd.outcomes().size() == 1);
  CHECK(std::isinf(pd.outcomes()[0].pricing.prices()[0]));

  Instance inst(2, {{{1.0, 1.0}, 1.0}});
  LotteryMenu bare(2, {});
  PricingDistribution pd2 = round_uniform_valuations(inst, bare);
  CHECK(derandomize(pd2, inst).expected_revenue == doctest::Approx(0.0));

  Instance skewed(2, {{{1.0, 2.0}, 1.0}});
  CHECK_THROWS_AS(round_uniform_valuations(skewed, menu), std::invalid_argument);
}
