// Command-line front end: generate instances, solve for optimal menus,
// round menus to item pricings, evaluate revenues, and run gap sweeps.

#include "lotpricing/buyone_lp.hpp"
#include "lotpricing/constructions.hpp"
#include "lotpricing/io.hpp"
#include "lotpricing/model.hpp"
#include "lotpricing/oracles.hpp"
#include "lotpricing/rounding.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace {

using namespace lotpricing;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  bool quiet = false;

  void note(const std::string& msg) const {
    if (!quiet) std::fprintf(stderr, "%s\n", msg.c_str());
  }
};

struct GenOpts {
  std::string family;
  int n = 3;
  double q = 64.0;
  int budget = 20000;
  double a = 0.0;
  double b = 1.0;
  int grid = 10;
  std::string out;
};

GeneratedInstance generate(const GenOpts& g, std::uint64_t seed) {
  if (g.family == "unbounded") return gen_unbounded_gap(g.n, g.q, g.budget, seed);
  if (g.family == "uniform") return gen_uniform_gap(g.n);
  if (g.family == "polylog") return gen_polylog_gap(g.n, seed);
  if (g.family == "two-item-uniform") return gen_two_item_uniform(g.a, g.b, g.grid);
  throw std::invalid_argument("unknown family: " + g.family);
}

int run_gen(const GlobalOpts& opts, const GenOpts& g) {
  GeneratedInstance gen = generate(g, opts.seed);
  write_json_file(g.out + ".instance.json", to_json(gen.instance));
  opts.note("wrote " + g.out + ".instance.json");
  if (gen.menu) {
    write_json_file(g.out + ".menu.json", to_json(*gen.menu));
    opts.note("wrote " + g.out + ".menu.json");
  }
  write_json_file(g.out + ".meta.json", gen.metadata);
  opts.note("wrote " + g.out + ".meta.json");
  return 0;
}

struct SolveOpts {
  std::string instance;
  std::string out;
};

int run_solve(const GlobalOpts& opts, const SolveOpts& s) {
  Instance inst = instance_from_json(read_json_file(s.instance));
  BuyOneSolveResult result = solve_optimal_buy_one(inst);
  if (!s.out.empty()) {
    write_json_file(s.out, to_json(result.menu));
    opts.note("wrote " + s.out);
  }
  std::printf("%s\n", fmt12(result.revenue).c_str());
  return 0;
}

struct RoundOpts {
  std::string mode;
  std::string instance;
  std::string menu;
  std::string out;
};

// Drops the trailing coordinate added by the dummy-item extension. The dummy
// is worthless to every consumer and its base price is zero, so each
// outcome's revenue is unchanged by the projection.
PricingDistribution project_out_dummy(const PricingDistribution& pd) {
  std::vector<PricingOutcome> outcomes;
  outcomes.reserve(pd.outcomes().size());
  for (const PricingOutcome& o : pd.outcomes()) {
    std::vector<double> prices(o.pricing.prices().begin(), o.pricing.prices().end() - 1);
    outcomes.push_back({o.prob, ItemPricing(std::move(prices))});
  }
  return PricingDistribution(std::move(outcomes));
}

int run_round(const GlobalOpts& opts, const RoundOpts& r) {
  Instance inst = instance_from_json(read_json_file(r.instance));
  LotteryMenu menu = menu_from_json(read_json_file(r.menu));

  PricingDistribution dist({{1.0, ItemPricing::all_infinite(inst.n())}});
  if (r.mode == "1d") {
    dist = round_1d(menu);
  } else if (r.mode == "2d") {
    Instance normalized = normalize_2d(inst, menu, opts.tol);
    dist = round_2d(normalized, menu);
  } else if (r.mode == "buy-many") {
    bool full = true;
    for (const Lottery& lot : menu.lotteries())
      if (!lot.is_null() && std::abs(lot.total_prob() - 1.0) > kDefaultTol) full = false;
    if (full) {
      dist = round_buy_many(menu, inst);
    } else {
      DummyExtended ext = add_dummy_item(inst, menu);
      dist = project_out_dummy(round_buy_many(ext.menu, ext.instance));
    }
  } else if (r.mode == "uniform") {
    dist = round_uniform_valuations(inst, menu);
  } else {
    throw std::invalid_argument("unknown mode: " + r.mode);
  }

  Derandomized der = derandomize(dist, inst, opts.tol);
  write_json_file(r.out + ".dist.json", to_json(dist));
  write_json_file(r.out + ".best.json", to_json(der.best));
  opts.note("wrote " + r.out + ".dist.json and " + r.out + ".best.json");
  std::printf("expected_revenue %s\n", fmt12(der.expected_revenue).c_str());
  std::printf("best_revenue %s\n", fmt12(der.best_revenue).c_str());
  return 0;
}

struct EvalOpts {
  std::string model;
  std::string instance;
  std::string menu;
  std::string pricing;
  int max_copies = 16;
  int max_mix = 3;
  int top_c = 20;
};

int run_eval(const GlobalOpts& opts, const EvalOpts& e) {
  Instance inst = instance_from_json(read_json_file(e.instance));
  double revenue = 0.0;
  if (e.model == "buy-one" || e.model == "buy-many") {
    if (e.menu.empty()) throw std::invalid_argument(e.model + " evaluation needs --menu");
    LotteryMenu menu = menu_from_json(read_json_file(e.menu));
    revenue = e.model == "buy-one"
                  ? buy_one_revenue(inst, menu, opts.tol)
                  : buy_many_revenue_bounded(inst, menu, e.max_copies, e.max_mix,
                                             e.top_c, opts.tol);
  } else if (e.model == "items") {
    if (e.pricing.empty()) throw std::invalid_argument("items evaluation needs --pricing");
    ItemPricing pricing = pricing_from_json(read_json_file(e.pricing));
    revenue = item_pricing_revenue(inst, pricing, opts.tol);
  } else {
    throw std::invalid_argument("unknown model: " + e.model);
  }
  std::printf("%s\n", fmt12(revenue).c_str());
  return 0;
}

struct GapOpts {
  std::string family;
  std::vector<int> n_sweep;
  std::vector<double> q_sweep;
  std::vector<int> grid_sweep;
  int budget = 20000;
  double a = 5.0;
  double b = 6.0;
  bool dry = false;
  std::string out;
};

struct GapRow {
  std::string family;
  int n = 0;
  std::string q;  // the swept parameter when it is not n (q or grid)
  GeneratedInstance gen;
};

int run_gap(const GlobalOpts& opts, const GapOpts& g) {
  std::vector<GapRow> rows;
  if (!g.dry) {
    if (g.family == "unbounded") {
      int n = g.n_sweep.empty() ? 4 : g.n_sweep.front();
      if (g.n_sweep.size() > 1)
        throw std::invalid_argument("the unbounded family sweeps q; give a single n");
      std::vector<double> qs = g.q_sweep.empty() ? std::vector<double>{16, 64, 256} : g.q_sweep;
      for (double q : qs)
        rows.push_back({g.family, n, fmt12(q), gen_unbounded_gap(n, q, g.budget, opts.seed)});
    } else if (g.family == "uniform" || g.family == "polylog") {
      std::vector<int> ns = g.n_sweep;
      if (ns.empty()) ns = g.family == "uniform" ? std::vector<int>{3, 4, 5} : std::vector<int>{3, 5};
      for (int n : ns)
        rows.push_back({g.family, n, "",
                        g.family == "uniform" ? gen_uniform_gap(n)
                                              : gen_polylog_gap(n, opts.seed)});
    } else if (g.family == "two-item-uniform") {
      std::vector<int> grids = g.grid_sweep.empty() ? std::vector<int>{4, 6, 8} : g.grid_sweep;
      for (int grid : grids)
        rows.push_back({g.family, 2, std::to_string(grid), gen_two_item_uniform(g.a, g.b, grid)});
    } else {
      throw std::invalid_argument("unknown family: " + g.family);
    }
  }

  std::ofstream csv(g.out);
  if (!csv) throw std::runtime_error("cannot open for writing: " + g.out);
  csv << "family,n,q,seed,lottery_revenue,item_revenue,ratio,item_method,seconds\n";

  for (const GapRow& row : rows) {
    const auto start = std::chrono::steady_clock::now();
    const Instance& inst = row.gen.instance;

    double lottery_rev;
    if (row.gen.menu) {
      lottery_rev = buy_one_revenue(inst, *row.gen.menu, opts.tol);
    } else {
      lottery_rev = solve_optimal_buy_one(inst).revenue;
    }

    std::vector<double> extras;
    if (row.gen.menu)
      for (const Lottery& lot : row.gen.menu->lotteries())
        if (std::isfinite(lot.price())) extras.push_back(lot.price());

    std::string method;
    double item_rev;
    if (brute_force_grid_size(inst, extras) <= 1e7) {
      method = "brute-force";
      item_rev = brute_force_item_pricing(inst, extras).revenue;
    } else {
      method = "uniform-price-only";
      item_rev = best_uniform_price(inst).revenue;
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    char seconds[32];
    std::snprintf(seconds, sizeof(seconds), "%.3f", elapsed.count());

    csv << row.family << ',' << row.n << ',' << row.q << ',' << opts.seed << ','
        << fmt12(lottery_rev) << ',' << fmt12(item_rev) << ','
        << (item_rev > 0.0 ? fmt12(lottery_rev / item_rev) : "") << ',' << method << ','
        << seconds << '\n';
    opts.note(row.family + " n=" + std::to_string(row.n) +
              (row.q.empty() ? "" : " q=" + row.q) + ": ratio " +
              (item_rev > 0.0 ? fmt12(lottery_rev / item_rev) : "n/a"));
  }
  if (!csv) throw std::runtime_error("write failed: " + g.out);
  opts.note("wrote " + g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lottery pricing for unit-demand consumers: optimal menus, "
               "item-pricing roundings, and revenue-gap experiments"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "RNG seed for all stochastic steps")
      ->envname("LOTPRICE_SEED");
  app.add_option("--tol", opts.tol, "tie-breaking tolerance for purchase decisions")
      ->capture_default_str();
  app.add_flag("--quiet", opts.quiet, "suppress informational notes on stderr");

  GenOpts gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance family");
  gen->fallthrough();
  gen->add_option("--family", gen_opts.family,
                  "unbounded | uniform | polylog | two-item-uniform")
      ->required();
  gen->add_option("--n", gen_opts.n, "item/base parameter of the family")->capture_default_str();
  gen->add_option("--q", gen_opts.q, "separation parameter (unbounded)")->capture_default_str();
  gen->add_option("--budget", gen_opts.budget, "packing candidate budget (unbounded)")->capture_default_str();
  gen->add_option("--a", gen_opts.a, "valuation interval start (two-item-uniform)")->capture_default_str();
  gen->add_option("--b", gen_opts.b, "valuation interval end (two-item-uniform)")->capture_default_str();
  gen->add_option("--grid", gen_opts.grid, "discretization grid (two-item-uniform)")->capture_default_str();
  gen->add_option("-o,--out", gen_opts.out, "output path prefix")->required();

  SolveOpts solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "compute an optimal lottery menu");
  solve->fallthrough();
  solve->add_option("--instance", solve_opts.instance, "instance JSON path")->required();
  solve->add_option("-o,--out", solve_opts.out, "menu JSON output path");

  RoundOpts round_opts;
  CLI::App* round = app.add_subcommand("round", "round a menu to a pricing distribution");
  round->fallthrough();
  round->add_option("--mode", round_opts.mode, "1d | 2d | buy-many | uniform")->required();
  round->add_option("--instance", round_opts.instance, "instance JSON path")->required();
  round->add_option("--menu", round_opts.menu, "menu JSON path")->required();
  round->add_option("-o,--out", round_opts.out, "output path prefix")->required();

  EvalOpts eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "evaluate revenue of a menu or pricing");
  eval->fallthrough();
  eval->add_option("--model", eval_opts.model, "buy-one | buy-many | items")->required();
  eval->add_option("--instance", eval_opts.instance, "instance JSON path")->required();
  eval->add_option("--menu", eval_opts.menu, "menu JSON path (buy-one / buy-many)");
  eval->add_option("--pricing", eval_opts.pricing, "pricing JSON path (items)");
  eval->add_option("--max-copies", eval_opts.max_copies,
                   "bundle search: copies of a single lottery")->capture_default_str();
  eval->add_option("--max-mix", eval_opts.max_mix, "bundle search: mixed multiset size")->capture_default_str();
  eval->add_option("--top-c", eval_opts.top_c, "bundle search: candidate pool size")->capture_default_str();

  GapOpts gap_opts;
  CLI::App* gap = app.add_subcommand("gap", "sweep a family and emit a CSV report");
  gap->fallthrough();
  gap->add_option("--family", gap_opts.family,
                  "unbounded | uniform | polylog | two-item-uniform")
      ->required();
  gap->add_option("--n", gap_opts.n_sweep, "n values (uniform/polylog sweep; single for unbounded)");
  gap->add_option("--q", gap_opts.q_sweep, "q values (unbounded sweep)");
  gap->add_option("--grid", gap_opts.grid_sweep, "grid values (two-item-uniform sweep)");
  gap->add_option("--budget", gap_opts.budget, "packing candidate budget")->capture_default_str();
  gap->add_option("--a", gap_opts.a, "valuation interval start")->capture_default_str();
  gap->add_option("--b", gap_opts.b, "valuation interval end")->capture_default_str();
  gap->add_flag("--dry", gap_opts.dry, "emit the CSV header and no rows");
  gap->add_option("-o,--out", gap_opts.out, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen(opts, gen_opts);
    if (*solve) return run_solve(opts, solve_opts);
    if (*round) return run_round(opts, round_opts);
    if (*eval) return run_eval(opts, eval_opts);
    if (*gap) return run_gap(opts, gap_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
