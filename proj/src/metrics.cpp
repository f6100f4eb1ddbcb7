#include "fuzzyucs/metrics.hpp"

#include <stdexcept>

#include "fuzzyucs/inference.hpp"

namespace fuzzyucs {

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("prediction and truth lengths differ");
    if (predicted.empty()) throw std::invalid_argument("nothing to score");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double macro_f1(std::span<const int> predicted, std::span<const int> truth, int n_classes) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("prediction and truth lengths differ");
    if (predicted.empty()) throw std::invalid_argument("nothing to score");
    if (n_classes < 2) throw std::invalid_argument("need at least 2 classes");

    double total = 0.0;
    for (int c = 0; c < n_classes; ++c) {
        long long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i) {
            if (predicted[i] == c && truth[i] == c) ++tp;
            else if (predicted[i] == c) ++fp;
            else if (truth[i] == c) ++fn;
        }
        double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        if (precision + recall > 0.0)
            total += 2.0 * precision * recall / (precision + recall);
    }
    return total / static_cast<double>(n_classes);
}

double mean_ignorance(const Population& pop, const Dataset& dataset, double theta_exploit) {
    if (dataset.size() == 0) throw std::invalid_argument("dataset is empty");
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        auto explained = explain_ds(pop, dataset.row(i), theta_exploit);
        total += explained ? explained->first.theta : 1.0;
    }
    return total / static_cast<double>(dataset.size());
}

std::pair<int, long long> ruleset_sizes(const Population& pop) {
    return {pop.macro_size(), pop.micro_size()};
}

} // namespace fuzzyucs
