#include "fuzzyucs/serialize.hpp"

#include <fstream>

#include "fuzzyucs/errors.hpp"

namespace fuzzyucs {

nlohmann::json rule_to_json(const FuzzyRule& rule) {
    nlohmann::json antecedent = nlohmann::json::array();
    for (TermSet terms : rule.antecedent) {
        nlohmann::json variable = nlohmann::json::array();
        for (int term = 1; term <= kMaxTerms; ++term)
            if (terms.contains(term)) variable.push_back(term);
        antecedent.push_back(std::move(variable));
    }
    return {
        {"antecedent", std::move(antecedent)},
        {"v", rule.weights},
        {"cm", rule.correct_matching},
        {"F", rule.fitness},
        {"exp", rule.experience},
        {"num", rule.numerosity},
        {"ts", rule.timestamp},
    };
}

FuzzyRule rule_from_json(const nlohmann::json& j, int n_classes, int n_features, int num_terms) {
    FuzzyRule rule;
    const nlohmann::json& antecedent = j.at("antecedent");
    if (static_cast<int>(antecedent.size()) != n_features)
        throw DataError("rule dimension does not match the header");
    for (const nlohmann::json& variable : antecedent) {
        std::uint32_t mask = 0;
        for (const nlohmann::json& term : variable) {
            int t = term.get<int>();
            if (t < 1 || t > num_terms) throw DataError("term index outside the partition");
            mask |= 1u << (t - 1);
        }
        if (mask == 0) throw DataError("empty term set in rule antecedent");
        rule.antecedent.push_back(TermSet::from_mask(mask));
    }
    rule.weights = j.at("v").get<std::vector<double>>();
    rule.correct_matching = j.at("cm").get<std::vector<double>>();
    if (static_cast<int>(rule.weights.size()) != n_classes ||
        static_cast<int>(rule.correct_matching.size()) != n_classes)
        throw DataError("rule class count does not match the header");
    rule.fitness = j.at("F").get<double>();
    rule.experience = j.at("exp").get<double>();
    rule.numerosity = j.at("num").get<int>();
    rule.timestamp = j.at("ts").get<std::int64_t>();
    if (rule.numerosity < 1) throw DataError("rule numerosity must be positive");
    rule.consequent = argmax_weight(rule.weights);
    return rule;
}

nlohmann::json population_to_json(const Population& pop, const std::vector<std::string>& class_names,
                                  const std::string& config_hash) {
    nlohmann::json rules = nlohmann::json::array();
    for (const FuzzyRule& rule : pop.rules)
        if (rule.numerosity > 0) rules.push_back(rule_to_json(rule));
    return {
        {"header",
         {
             {"config_hash", config_hash},
             {"class_names", class_names},
             {"dimension", pop.n_features},
             {"partition_terms", pop.partition.num_terms},
         }},
        {"rules", std::move(rules)},
    };
}

void save_population(const Population& pop, const std::vector<std::string>& class_names,
                     const ExperimentConfig& config, const std::string& path) {
    if (static_cast<int>(class_names.size()) != pop.n_classes)
        throw DataError("class name count does not match the population");
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    file << population_to_json(pop, class_names, config.hash_hex()).dump(2) << '\n';
    if (!file) throw DataError("failed writing " + path);
}

LoadedPopulation population_from_json(const nlohmann::json& j) try {
    LoadedPopulation loaded;
    const nlohmann::json& header = j.at("header");
    loaded.config_hash = header.at("config_hash").get<std::string>();
    loaded.class_names = header.at("class_names").get<std::vector<std::string>>();
    int dimension = header.at("dimension").get<int>();
    int partition_terms = header.at("partition_terms").get<int>();
    if (loaded.class_names.size() < 2) throw DataError("population declares fewer than 2 classes");

    loaded.pop.n_classes = static_cast<int>(loaded.class_names.size());
    loaded.pop.n_features = dimension;
    loaded.pop.partition = make_partition(partition_terms);
    for (const nlohmann::json& rule : j.at("rules"))
        loaded.pop.rules.push_back(
            rule_from_json(rule, loaded.pop.n_classes, dimension, partition_terms));
    return loaded;
} catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed population record: ") + e.what());
}

LoadedPopulation load_population(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);
    nlohmann::json j;
    try {
        file >> j;
        return population_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

} // namespace fuzzyucs
