#include "lotpricing/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lotpricing {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

Instance::Instance(int n, std::vector<ConsumerType> consumers)
    : n_(n), consumers_(std::move(consumers)) {
  require(n_ >= 1, "instance: item count must be positive");
  require(!consumers_.empty(), "instance: needs at least one consumer type");
  for (const auto& c : consumers_) {
    require(static_cast<int>(c.values.size()) == n_,
            "instance: consumer valuation length must equal item count");
    require(finite_nonneg(c.weight), "instance: weights must be finite and nonnegative");
    for (double v : c.values)
      require(finite_nonneg(v), "instance: valuations must be finite and nonnegative");
  }
}

Lottery::Lottery(std::vector<double> probs, double price)
    : probs_(std::move(probs)), price_(price) {
  require(!probs_.empty(), "lottery: needs at least one item");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0 + 1e-12,
            "lottery: probabilities must lie in [0,1]");
    sum += p;
  }
  require(sum <= 1.0 + 1e-12, "lottery: probabilities must sum to at most 1");
  require(finite_nonneg(price_), "lottery: price must be finite and nonnegative");
}

double Lottery::total_prob() const {
  double sum = 0.0;
  for (double p : probs_) sum += p;
  return sum;
}

bool Lottery::is_null() const {
  if (price_ != 0.0) return false;
  for (double p : probs_)
    if (p != 0.0) return false;
  return true;
}

LotteryMenu::LotteryMenu(int n, std::vector<Lottery> lotteries)
    : n_(n), lotteries_(std::move(lotteries)) {
  require(n_ >= 1, "menu: item count must be positive");
  bool has_null = false;
  for (const auto& lot : lotteries_) {
    require(static_cast<int>(lot.probs().size()) == n_,
            "menu: lottery dimension must equal item count");
    has_null = has_null || lot.is_null();
  }
  if (!has_null)
    lotteries_.insert(lotteries_.begin(), Lottery(std::vector<double>(n_, 0.0), 0.0));
}

ItemPricing::ItemPricing(std::vector<double> prices) : prices_(std::move(prices)) {
  require(!prices_.empty(), "pricing: needs at least one item");
  for (double p : prices_)
    require(!std::isnan(p) && p >= 0.0, "pricing: prices must be nonnegative (+inf allowed)");
}

ItemPricing ItemPricing::all_infinite(int n) {
  return ItemPricing(std::vector<double>(static_cast<std::size_t>(n), kInfinitePrice));
}

PricingDistribution::PricingDistribution(std::vector<PricingOutcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  require(!outcomes_.empty(), "pricing distribution: needs at least one outcome");
  double sum = 0.0;
  int dim = outcomes_.front().pricing.n();
  for (const auto& o : outcomes_) {
    require(std::isfinite(o.prob) && o.prob >= 0.0,
            "pricing distribution: outcome probabilities must be nonnegative");
    require(o.pricing.n() == dim, "pricing distribution: outcome dimensions must agree");
    sum += o.prob;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "pricing distribution: probabilities must sum to 1");
}

int PricingDistribution::n() const { return outcomes_.front().pricing.n(); }

}  // namespace lotpricing
