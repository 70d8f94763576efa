#include "lotpricing/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lotpricing {

namespace {

using nlohmann::json;

json price_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double number_from_json(const json& j, const char* what) {
  if (!j.is_number())
    throw std::invalid_argument(std::string(what) + ": expected a number");
  double v = j.get<double>();
  if (std::isnan(v)) throw std::invalid_argument(std::string(what) + ": NaN rejected");
  if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative value rejected");
  return v;
}

double price_from_json(const json& j, const char* what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinitePrice;
    throw std::invalid_argument(std::string(what) + ": only the string \"inf\" is accepted");
  }
  return number_from_json(j, what);
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(number_from_json(e, what));
  return out;
}

}  // namespace

json to_json(const Instance& inst) {
  json consumers = json::array();
  for (const ConsumerType& c : inst.consumers())
    consumers.push_back({{"values", c.values}, {"weight", c.weight}});
  return {{"n", inst.n()}, {"consumers", std::move(consumers)}};
}

json to_json(const LotteryMenu& menu) {
  // No dimension field: the null lottery is always present, so the probs
  // arrays carry the item count.
  json lots = json::array();
  for (const Lottery& lot : menu.lotteries())
    lots.push_back({{"probs", lot.probs()}, {"price", lot.price()}});
  return {{"lotteries", std::move(lots)}};
}

json to_json(const ItemPricing& pricing) {
  json prices = json::array();
  for (double p : pricing.prices()) prices.push_back(price_to_json(p));
  return {{"prices", std::move(prices)}};
}

json to_json(const PricingDistribution& pd) {
  json outcomes = json::array();
  for (const PricingOutcome& o : pd.outcomes()) {
    json prices = json::array();
    for (double p : o.pricing.prices()) prices.push_back(price_to_json(p));
    outcomes.push_back({{"prob", o.prob}, {"prices", std::move(prices)}});
  }
  return {{"outcomes", std::move(outcomes)}};
}

Instance instance_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<ConsumerType> consumers;
  for (const json& c : j.at("consumers"))
    consumers.push_back({number_array(c.at("values"), "consumer values"),
                         number_from_json(c.at("weight"), "consumer weight")});
  return Instance(n, std::move(consumers));
}

LotteryMenu menu_from_json(const json& j) {
  std::vector<Lottery> lots;
  for (const json& l : j.at("lotteries"))
    lots.emplace_back(number_array(l.at("probs"), "lottery probs"),
                      number_from_json(l.at("price"), "lottery price"));
  if (lots.empty()) throw std::invalid_argument("menu: needs at least one lottery");
  int n = static_cast<int>(lots.front().probs().size());
  return LotteryMenu(n, std::move(lots));
}

ItemPricing pricing_from_json(const json& j) {
  std::vector<double> prices;
  for (const json& p : j.at("prices")) prices.push_back(price_from_json(p, "price"));
  return ItemPricing(std::move(prices));
}

PricingDistribution distribution_from_json(const json& j) {
  std::vector<PricingOutcome> outcomes;
  for (const json& o : j.at("outcomes")) {
    std::vector<double> prices;
    for (const json& p : o.at("prices")) prices.push_back(price_from_json(p, "price"));
    outcomes.push_back({number_from_json(o.at("prob"), "outcome prob"),
                        ItemPricing(std::move(prices))});
  }
  return PricingDistribution(std::move(outcomes));
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

}  // namespace lotpricing
