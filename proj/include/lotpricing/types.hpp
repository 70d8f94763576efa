#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace lotpricing {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kInfinitePrice = std::numeric_limits<double>::infinity();

// One consumer type: a nonnegative valuation per item plus a mass.  Weights
// are plain masses; nothing here assumes they sum to 1.
struct ConsumerType {
  std::vector<double> values;
  double weight = 1.0;
};

// A unit-demand market: n items and finitely many weighted consumer types.
// Immutable once constructed; the constructor validates shapes and signs.
class Instance {
 public:
  Instance(int n, std::vector<ConsumerType> consumers);

  int n() const { return n_; }
  const std::vector<ConsumerType>& consumers() const { return consumers_; }

 private:
  int n_;
  std::vector<ConsumerType> consumers_;
};

// A priced randomized allocation: probability per item (total at most 1,
// the remainder allocates nothing) and a finite nonnegative price.
class Lottery {
 public:
  Lottery(std::vector<double> probs, double price);

  const std::vector<double>& probs() const { return probs_; }
  double price() const { return price_; }
  double total_prob() const;
  // The opt-out entry: zero probability everywhere, price zero.
  bool is_null() const;

  bool operator==(const Lottery& other) const = default;

 private:
  std::vector<double> probs_;
  double price_;
};

// A menu of lotteries over n items.  The null lottery is always present: it
// is inserted at the front on construction when absent, so "buy nothing" is
// representable as an ordinary choice.
class LotteryMenu {
 public:
  LotteryMenu(int n, std::vector<Lottery> lotteries);

  int n() const { return n_; }
  const std::vector<Lottery>& lotteries() const { return lotteries_; }

 private:
  int n_;
  std::vector<Lottery> lotteries_;
};

// Deterministic posted prices, one per item; +infinity marks an item that is
// not offered.
class ItemPricing {
 public:
  explicit ItemPricing(std::vector<double> prices);

  const std::vector<double>& prices() const { return prices_; }
  int n() const { return static_cast<int>(prices_.size()); }

  static ItemPricing all_infinite(int n);

 private:
  std::vector<double> prices_;
};

// A multiset of menu entries bought together; `lottery` indexes the menu.
struct BundleEntry {
  std::size_t lottery = 0;
  int copies = 1;
};

struct Bundle {
  std::vector<BundleEntry> entries;
};

// A randomized item pricing: finitely many pricings with probabilities that
// sum to 1 (validated to 1e-9).
struct PricingOutcome {
  double prob;
  ItemPricing pricing;
};

class PricingDistribution {
 public:
  explicit PricingDistribution(std::vector<PricingOutcome> outcomes);

  const std::vector<PricingOutcome>& outcomes() const { return outcomes_; }
  int n() const;

 private:
  std::vector<PricingOutcome> outcomes_;
};

}  // namespace lotpricing
