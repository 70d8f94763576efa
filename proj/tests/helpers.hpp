#pragma once

// Shared fixtures for the test binaries: small random instances and menus.

#include "lotpricing/rng.hpp"
#include "lotpricing/types.hpp"

#include <vector>

namespace testutil {

inline lotpricing::Instance random_instance(lotpricing::SplitMix64& rng, int n,
                                            int max_consumers, double max_value) {
  int m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_consumers)));
  std::vector<lotpricing::ConsumerType> consumers;
  for (int j = 0; j < m; ++j) {
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(0.0, max_value);
    consumers.push_back({std::move(values), rng.uniform(0.1, 1.0)});
  }
  return lotpricing::Instance(n, std::move(consumers));
}

inline lotpricing::LotteryMenu random_menu(lotpricing::SplitMix64& rng, int n,
                                           int max_lotteries, double max_price) {
  int count = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_lotteries)));
  std::vector<lotpricing::Lottery> lots;
  for (int l = 0; l < count; ++l) {
    std::vector<double> probs(n);
    double budget = 1.0;
    for (double& p : probs) {
      p = rng.uniform(0.0, budget);
      budget -= p;
    }
    lots.emplace_back(std::move(probs), rng.uniform(0.0, max_price));
  }
  return lotpricing::LotteryMenu(n, std::move(lots));
}

// Menu whose non-null lotteries all allocate with total probability one.
inline lotpricing::LotteryMenu random_full_menu(lotpricing::SplitMix64& rng, int n,
                                                int max_lotteries, double max_price) {
  int count = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_lotteries)));
  std::vector<lotpricing::Lottery> lots;
  for (int l = 0; l < count; ++l) {
    std::vector<double> probs(n);
    double budget = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
      probs[i] = rng.uniform(0.0, budget);
      budget -= probs[i];
    }
    probs[n - 1] = budget;
    lots.emplace_back(std::move(probs), rng.uniform(0.0, max_price));
  }
  return lotpricing::LotteryMenu(n, std::move(lots));
}

}  // namespace testutil
