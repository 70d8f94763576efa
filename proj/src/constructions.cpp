#include "lotpricing/constructions.hpp"

#include "lotpricing/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lotpricing {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Largest consumer index the scale 2^j (values) and 2^-j (weights) can take
// without leaving double range; a round number well inside the limit.
constexpr int kMaxUnboundedVectors = 1000;

}  // namespace

PackedVectorSet pack_vectors(int n, double q, int candidate_budget,
                             std::uint64_t seed, int max_accept) {
  require(n >= 1, "dimension must be positive");
  require(q >= 2.0 * n, "separation parameter must be at least 2n");
  require(candidate_budget >= 1, "candidate budget must be positive");

  const double radius = 1.0 / std::sqrt(static_cast<double>(n));
  const double bound = 1.0 / n - 1.0 / q;

  PackedVectorSet set;
  set.n = n;
  set.q = q;

  SplitMix64 rng(seed);
  std::vector<double> cand(n);
  for (int c = 0; c < candidate_budget; ++c) {
    double norm_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      cand[i] = std::abs(rng.next_normal());
      norm_sq += cand[i] * cand[i];
    }
    if (norm_sq == 0.0) continue;
    const double scale = radius / std::sqrt(norm_sq);
    for (int i = 0; i < n; ++i) cand[i] *= scale;

    bool ok = true;
    for (const auto& v : set.vectors) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += cand[i] * v[i];
      if (dot > bound) {
        ok = false;
        break;
      }
    }
    if (ok) {
      set.vectors.push_back(cand);
      if (max_accept > 0 && static_cast<int>(set.vectors.size()) >= max_accept) break;
    }
  }
  return set;
}

GeneratedInstance gen_unbounded_gap(int n, double q, int candidate_budget,
                                    std::uint64_t seed) {
  PackedVectorSet set = pack_vectors(n, q, candidate_budget, seed, kMaxUnboundedVectors);
  const int l = static_cast<int>(set.vectors.size());

  std::vector<ConsumerType> consumers;
  std::vector<Lottery> lotteries;
  consumers.reserve(l);
  lotteries.reserve(l);
  for (int j = 1; j <= l; ++j) {
    const std::vector<double>& v = set.vectors[j - 1];
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = std::ldexp(v[i], j);
    consumers.push_back({std::move(values), std::ldexp(1.0, -j)});
    lotteries.emplace_back(v, std::ldexp(1.0, j) / q);
  }

  GeneratedInstance out{Instance(n, std::move(consumers)),
                        LotteryMenu(n, std::move(lotteries)),
                        nlohmann::json::object()};
  out.metadata["family"] = "unbounded";
  out.metadata["params"] = {{"n", n},
                            {"q", q},
                            {"budget", candidate_budget},
                            {"seed", seed},
                            {"vectors", l}};
  out.metadata["analytic_lottery_revenue"] = static_cast<double>(l) / q;
  if (n < 4) out.metadata["warning"] = "family is designed for n >= 4";
  if (l >= kMaxUnboundedVectors)
    out.metadata["note"] = "vector count capped to keep value scales finite";
  return out;
}

GeneratedInstance gen_uniform_gap(int n) {
  require(n >= 2 && n <= 8,
          "item count must be in [2, 8]; value scales overflow beyond that");

  // All nonempty subsets of the items, largest first, lexicographic within a
  // cardinality level.
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });

  const double base = static_cast<double>(n);
  std::vector<ConsumerType> consumers;
  std::vector<Lottery> lotteries;
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    const auto& s = subsets[j];
    std::vector<double> values(n, 0.0);
    for (int i : s) values[i] = std::pow(base, static_cast<double>(j));
    consumers.push_back({std::move(values), std::pow(base, -static_cast<double>(j))});

    std::vector<double> probs(n, 0.0);
    for (int i : s) probs[i] = 1.0 / static_cast<double>(s.size());
    lotteries.emplace_back(std::move(probs), std::pow(base, static_cast<double>(j) - 1.0));
  }

  const double levels = static_cast<double>(subsets.size());
  GeneratedInstance out{Instance(n, std::move(consumers)),
                        LotteryMenu(n, std::move(lotteries)),
                        nlohmann::json::object()};
  out.metadata["family"] = "uniform";
  out.metadata["params"] = {{"n", n}};
  out.metadata["analytic_lottery_revenue"] = levels / base;
  return out;
}

GeneratedInstance gen_polylog_gap(int n, std::uint64_t seed) {
  require(n >= 2 && n <= 13, "base must be in [2, 13]");
  for (int d = 2; d < n; ++d) require(n % d != 0, "base must be prime");

  const int items = n * n;
  const int k = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  SplitMix64 rng(seed);

  std::vector<ConsumerType> consumers;
  std::vector<Lottery> lotteries;
  consumers.reserve(static_cast<std::size_t>(n) * n * n);
  lotteries.reserve(consumers.capacity());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const int j = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
        const double value = std::ldexp(1.0, j - k);
        const double weight = std::ldexp(1.0, k - j);

        std::vector<double> values(items, 0.0);
        std::vector<double> probs(items, 0.0);
        for (int x = 0; x < n; ++x) {
          const int y = ((a * x + b) * x + c) % n;
          values[x * n + y] = value;
          probs[x * n + y] = 1.0 / static_cast<double>(n);
        }
        consumers.push_back({std::move(values), weight});
        lotteries.emplace_back(std::move(probs), value / 2.0);
      }
    }
  }

  GeneratedInstance out{Instance(items, std::move(consumers)),
                        LotteryMenu(items, std::move(lotteries)),
                        nlohmann::json::object()};
  out.metadata["family"] = "polylog";
  out.metadata["params"] = {{"n", n}, {"seed", seed}};
  out.metadata["analytic_lottery_revenue"] = static_cast<double>(n) * n * n / 2.0;
  return out;
}

GeneratedInstance gen_two_item_uniform(double a, double b, int grid) {
  require(a >= 0.0 && a < b, "need 0 <= a < b");
  require(grid >= 2, "grid must be at least 2");

  const double step = (b - a) / grid;
  const double weight = 1.0 / (static_cast<double>(grid) * grid);
  std::vector<ConsumerType> consumers;
  consumers.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      consumers.push_back({{a + (i + 0.5) * step, a + (j + 0.5) * step}, weight});

  GeneratedInstance out{Instance(2, std::move(consumers)), std::nullopt,
                        nlohmann::json::object()};
  out.metadata["family"] = "two-item-uniform";
  out.metadata["params"] = {{"a", a}, {"b", b}, {"grid", grid}};
  out.metadata["analytic_lottery_revenue"] = nullptr;
  return out;
}

}  // namespace lotpricing
