#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bex/deontic.hpp"

namespace bex {

struct PrinciplesConfig {
  std::vector<IdealityPrinciple> principles;
  PrincipleOrder order;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File format: {"principles": [<term>...], "ranks": {<term>: <int>, ...}}.
/// Every ranked term must appear in principles; unranked principles get the
/// defaults (MustPrecede 2, everything else 1).
inline PrinciplesConfig parse_principles(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("principles JSON: ") + e.what());
  }
  PrinciplesConfig cfg;
  try {
    for (const auto& j : doc.at("principles"))
      cfg.principles.push_back(
          IdealityPrinciple::from_term(parse_term(j.get<std::string>())));
    if (doc.contains("ranks"))
      for (auto it = doc.at("ranks").begin(); it != doc.at("ranks").end(); ++it) {
        IdealityPrinciple pr = IdealityPrinciple::from_term(parse_term(it.key()));
        bool known = false;
        for (const auto& p : cfg.principles)
          if (p == pr) known = true;
        if (!known)
          throw ConfigError("ranked principle not listed: " + it.key());
        cfg.order.rank[pr] = it.value().get<int>();
      }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("principles file: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("principles file: ") + e.what());
  }
  return cfg;
}

inline std::string serialize_principles(const PrinciplesConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["principles"] = nlohmann::ordered_json::array();
  for (const auto& p : cfg.principles) doc["principles"].push_back(p.to_term().str());
  auto ranks = nlohmann::ordered_json::object();
  for (const auto& [pr, r] : cfg.order.rank) ranks[pr.to_term().str()] = r;
  doc["ranks"] = ranks;
  return doc.dump(2) + "\n";
}

}  // namespace bex
