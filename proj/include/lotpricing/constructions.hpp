#pragma once

// Generators for the instance families with analytically known lottery
// revenue, plus the sphere-packing helper they build on.

#include "lotpricing/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace lotpricing {

// Nonnegative vectors of Euclidean norm 1/sqrt(n) whose pairwise dot
// products stay at or below 1/n - 1/q. Equivalently (expanding the norm),
// pairwise distances are at least sqrt(2/q) on the sphere.
struct PackedVectorSet {
  int n = 1;
  double q = 2.0;
  std::vector<std::vector<double>> vectors;
};

// Greedy packing over `candidate_budget` directions sampled uniformly from
// the positive orthant (absolute normals, rescaled to norm 1/sqrt(n)).
// A candidate joins the set iff its dot product with every member is at
// most 1/n - 1/q. Deterministic given the seed. `max_accept` stops the scan
// once that many vectors are in (0 = unlimited).
PackedVectorSet pack_vectors(int n, double q, int candidate_budget,
                             std::uint64_t seed, int max_accept = 0);

struct GeneratedInstance {
  Instance instance;
  std::optional<LotteryMenu> menu;
  nlohmann::json metadata;  // {"family", "params", "analytic_lottery_revenue"}
};

// Geometric family with an unboundedly growing lottery/item revenue ratio:
// consumer j (1-based) values items at 2^j * v_j with weight 2^-j, and the
// menu offers probabilities v_j at price 2^j / q. Every consumer buys her
// own lottery, so the menu earns exactly (number of vectors) / q, while any
// item pricing earns at most 2n. The vector count is capped at 1000 to keep
// the 2^j scales inside double range.
GeneratedInstance gen_unbounded_gap(int n, double q, int candidate_budget,
                                    std::uint64_t seed);

// Uniform-valuation family over all nonempty subsets of the items, ordered
// by non-increasing cardinality then lexicographically: consumer j values
// her subset's items at n^j with weight n^-j, and the menu spreads
// probability uniformly over the subset at price n^(j-1). The menu earns
// (2^n - 1)/n. Supported for 2 <= n <= 8; the value scale n^(2^n - 2)
// overflows doubles beyond that.
GeneratedInstance gen_uniform_gap(int n);

// Plane-curve family on n^2 items (n prime): one class per coefficient
// triple (a,b,c) supported on the graph of ax^2+bx+c over Z/nZ, so classes
// share at most two items. Class values are 2^(j-k) with weight 2^(k-j),
// j drawn uniformly from {1..k}, k = floor(log2 n); its lottery spreads 1/n
// over the curve at half the class value. The menu earns exactly n^3 / 2.
GeneratedInstance gen_polylog_gap(int n, std::uint64_t seed);

// Two items with independent uniform valuations on [a,b], discretized to a
// grid x grid equal-weight cloud of cell centers (total weight 1). No menu:
// this family exists to compare the optimal menu against item pricing.
GeneratedInstance gen_two_item_uniform(double a, double b, int grid);

}  // namespace lotpricing
