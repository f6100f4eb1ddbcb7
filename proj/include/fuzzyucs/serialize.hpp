#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzyucs/config.hpp"
#include "fuzzyucs/learner.hpp"

namespace fuzzyucs {

// Rule record keys: "antecedent" (array per variable of 1-based term lists),
// "v", "cm", "F", "exp", "num", "ts". The consequent is argmax(v) and is not
// stored. Numbers round-trip exactly.
nlohmann::json rule_to_json(const FuzzyRule& rule);
FuzzyRule rule_from_json(const nlohmann::json& j, int n_classes, int n_features, int num_terms);

// Population files: {"header": {"config_hash", "class_names", "dimension",
// "partition_terms"}, "rules": [...]}.
nlohmann::json population_to_json(const Population& pop, const std::vector<std::string>& class_names,
                                  const std::string& config_hash);
void save_population(const Population& pop, const std::vector<std::string>& class_names,
                     const ExperimentConfig& config, const std::string& path);

struct LoadedPopulation {
    Population pop;
    std::vector<std::string> class_names;
    std::string config_hash;
};

LoadedPopulation population_from_json(const nlohmann::json& j);
LoadedPopulation load_population(const std::string& path);

} // namespace fuzzyucs
