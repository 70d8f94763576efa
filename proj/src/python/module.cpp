// Python bindings for the core operations: model evaluation, the optimal
// menu solver, the three roundings, the generators, and the oracles.
// Generator metadata crosses the boundary as a JSON string.

#include "lotpricing/buyone_lp.hpp"
#include "lotpricing/constructions.hpp"
#include "lotpricing/io.hpp"
#include "lotpricing/model.hpp"
#include "lotpricing/oracles.hpp"
#include "lotpricing/rounding.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lotpricing;

namespace {

py::tuple generated_to_tuple(const GeneratedInstance& g) {
  py::object menu = g.menu ? py::cast(*g.menu) : py::none();
  return py::make_tuple(g.instance, menu, g.metadata.dump());
}

}  // namespace

PYBIND11_MODULE(lotpricing, m) {
  m.doc() = "Optimal lottery pricing for unit-demand consumers";

  py::class_<ConsumerType>(m, "ConsumerType")
      .def(py::init<std::vector<double>, double>(), py::arg("values"),
           py::arg("weight") = 1.0)
      .def_readonly("values", &ConsumerType::values)
      .def_readonly("weight", &ConsumerType::weight);

  py::class_<Instance>(m, "Instance")
      .def(py::init<int, std::vector<ConsumerType>>(), py::arg("n"), py::arg("consumers"))
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("consumers", &Instance::consumers);

  py::class_<Lottery>(m, "Lottery")
      .def(py::init<std::vector<double>, double>(), py::arg("probs"), py::arg("price"))
      .def_property_readonly("probs", &Lottery::probs)
      .def_property_readonly("price", &Lottery::price)
      .def("total_prob", &Lottery::total_prob)
      .def("is_null", &Lottery::is_null);

  py::class_<LotteryMenu>(m, "LotteryMenu")
      .def(py::init<int, std::vector<Lottery>>(), py::arg("n"), py::arg("lotteries"))
      .def_property_readonly("n", &LotteryMenu::n)
      .def_property_readonly("lotteries", &LotteryMenu::lotteries);

  py::class_<ItemPricing>(m, "ItemPricing")
      .def(py::init<std::vector<double>>(), py::arg("prices"))
      .def_property_readonly("prices", &ItemPricing::prices)
      .def_static("all_infinite", &ItemPricing::all_infinite, py::arg("n"));

  py::class_<PricingOutcome>(m, "PricingOutcome")
      .def_readonly("prob", &PricingOutcome::prob)
      .def_readonly("pricing", &PricingOutcome::pricing);

  py::class_<PricingDistribution>(m, "PricingDistribution")
      .def(py::init<std::vector<PricingOutcome>>(), py::arg("outcomes"))
      .def_property_readonly("outcomes", &PricingDistribution::outcomes);

  m.def("buy_one_revenue", &buy_one_revenue, py::arg("instance"), py::arg("menu"),
        py::arg("tol") = kDefaultTol);
  m.def("item_pricing_revenue", &item_pricing_revenue, py::arg("instance"),
        py::arg("pricing"), py::arg("tol") = kDefaultTol);

  m.def(
      "solve_optimal_buy_one",
      [](const Instance& inst) {
        BuyOneSolveResult r = solve_optimal_buy_one(inst);
        return py::make_tuple(r.menu, r.revenue);
      },
      py::arg("instance"), "Returns (menu, revenue) of an optimal buy-one menu");
  m.def(
      "solve_full_allocation_buy_one",
      [](const Instance& inst) {
        BuyOneSolveResult r = solve_full_allocation_buy_one(inst);
        return py::make_tuple(r.menu, r.revenue);
      },
      py::arg("instance"),
      "Optimal menu whose paying lotteries allocate with total probability 1");

  m.def("round_1d", &round_1d, py::arg("menu"));
  m.def("normalize_2d", &normalize_2d, py::arg("instance"), py::arg("menu"),
        py::arg("tol") = kDefaultTol);
  m.def("round_2d", &round_2d, py::arg("instance"), py::arg("menu"));
  m.def("round_buy_many", &round_buy_many, py::arg("menu"), py::arg("instance"));
  m.def("round_uniform_valuations", &round_uniform_valuations, py::arg("instance"),
        py::arg("menu"));
  m.def(
      "derandomize",
      [](const PricingDistribution& pd, const Instance& inst, double tol) {
        Derandomized d = derandomize(pd, inst, tol);
        return py::make_tuple(d.best, d.best_revenue, d.expected_revenue);
      },
      py::arg("distribution"), py::arg("instance"), py::arg("tol") = kDefaultTol,
      "Returns (best_pricing, best_revenue, expected_revenue)");

  m.def(
      "brute_force_item_pricing",
      [](const Instance& inst, const std::vector<double>& extras, double guard) {
        BestPricing b = brute_force_item_pricing(inst, extras, guard);
        return py::make_tuple(b.pricing, b.revenue);
      },
      py::arg("instance"), py::arg("extra_candidates") = std::vector<double>{},
      py::arg("guard") = 1e7);
  m.def(
      "best_uniform_price",
      [](const Instance& inst) {
        BestUniformPrice b = best_uniform_price(inst);
        return py::make_tuple(b.price, b.revenue);
      },
      py::arg("instance"));
  m.def("buy_many_revenue_bounded", &buy_many_revenue_bounded, py::arg("instance"),
        py::arg("menu"), py::arg("max_copies"), py::arg("max_mix"), py::arg("top_c"),
        py::arg("tol") = kDefaultTol);
  m.def(
      "grid_lottery_search",
      [](const Instance& inst, double resolution) {
        MenuSearchResult r = grid_lottery_search(inst, resolution);
        return py::make_tuple(r.menu, r.revenue);
      },
      py::arg("instance"), py::arg("resolution"));

  m.def(
      "gen_unbounded_gap",
      [](int n, double q, int budget, std::uint64_t seed) {
        return generated_to_tuple(gen_unbounded_gap(n, q, budget, seed));
      },
      py::arg("n"), py::arg("q"), py::arg("budget"), py::arg("seed"),
      "Returns (instance, menu, metadata_json)");
  m.def(
      "gen_uniform_gap", [](int n) { return generated_to_tuple(gen_uniform_gap(n)); },
      py::arg("n"));
  m.def(
      "gen_polylog_gap",
      [](int n, std::uint64_t seed) { return generated_to_tuple(gen_polylog_gap(n, seed)); },
      py::arg("n"), py::arg("seed"));
  m.def(
      "gen_two_item_uniform",
      [](double a, double b, int grid) {
        return generated_to_tuple(gen_two_item_uniform(a, b, grid));
      },
      py::arg("a"), py::arg("b"), py::arg("grid"));

  m.def(
      "instance_to_json", [](const Instance& i) { return to_json(i).dump(2); },
      py::arg("instance"));
  m.def(
      "instance_from_json",
      [](const std::string& s) { return instance_from_json(nlohmann::json::parse(s)); },
      py::arg("text"));
  m.def(
      "menu_to_json", [](const LotteryMenu& m_) { return to_json(m_).dump(2); },
      py::arg("menu"));
  m.def(
      "menu_from_json",
      [](const std::string& s) { return menu_from_json(nlohmann::json::parse(s)); },
      py::arg("text"));
}
