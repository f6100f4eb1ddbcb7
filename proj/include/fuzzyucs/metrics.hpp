#pragma once

#include <optional>
#include <span>
#include <utility>

#include "fuzzyucs/data.hpp"
#include "fuzzyucs/learner.hpp"

namespace fuzzyucs {

struct EvalReport {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::optional<double> mean_ignorance; // Dempster-Shafer scheme only
    int macro_rules = 0;
    long long micro_rules = 0;
};

double accuracy(std::span<const int> predicted, std::span<const int> truth);

// Unweighted mean of per-class F1 over the declared class set; a class with
// zero precision and recall contributes 0.
double macro_f1(std::span<const int> predicted, std::span<const int> truth, int n_classes);

// Average combined mass on Theta over the dataset. Points no experienced
// rule matches count as full ignorance, 1.
double mean_ignorance(const Population& pop, const Dataset& dataset, double theta_exploit);

// {macro rule count, micro rule count}.
std::pair<int, long long> ruleset_sizes(const Population& pop);

} // namespace fuzzyucs
