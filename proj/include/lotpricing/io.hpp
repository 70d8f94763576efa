#pragma once

// JSON serialization for every on-disk schema. Infinite prices are written
// as the string "inf"; everything else is a plain number. Object keys are
// emitted sorted, so equal values serialize to identical bytes.

#include "lotpricing/types.hpp"

#include <json.hpp>

#include <string>

namespace lotpricing {

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const LotteryMenu& menu);
nlohmann::json to_json(const ItemPricing& pricing);
nlohmann::json to_json(const PricingDistribution& pd);

Instance instance_from_json(const nlohmann::json& j);
LotteryMenu menu_from_json(const nlohmann::json& j);
ItemPricing pricing_from_json(const nlohmann::json& j);
PricingDistribution distribution_from_json(const nlohmann::json& j);

// File helpers; read throws std::runtime_error with the path on failure.
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace lotpricing
