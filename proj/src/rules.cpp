#include "fuzzyucs/rules.hpp"

#include <stdexcept>
#include <string>

namespace fuzzyucs {

int argmax_weight(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("weight vector is empty");
    int best = 0;
    for (int i = 1; i < static_cast<int>(weights.size()); ++i)
        if (weights[i] > weights[best]) best = i;
    return best;
}

double fitness_from_weights(std::span<const double> weights, FitnessMode mode) {
    int best = argmax_weight(weights);
    if (mode == FitnessMode::Unsigned) return weights[best];
    double others = 0.0;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i)
        if (i != best) others += weights[i];
    return weights[best] - others;
}

void update_on_match(FuzzyRule& rule, double mu, int correct_class,
                     ExperienceMode experience_mode, FitnessMode fitness_mode) {
    if (!(mu > 0.0 && mu <= 1.0))
        throw std::invalid_argument("matching degree outside (0, 1]: " + std::to_string(mu));
    if (correct_class < 0 || correct_class >= static_cast<int>(rule.weights.size()))
        throw std::invalid_argument("class index out of range: " + std::to_string(correct_class));

    rule.experience += experience_mode == ExperienceMode::Membership ? mu : 1.0;
    rule.correct_matching[correct_class] += mu;
    for (std::size_t i = 0; i < rule.weights.size(); ++i)
        rule.weights[i] = rule.correct_matching[i] / rule.experience;
    rule.consequent = argmax_weight(rule.weights);
    rule.fitness = fitness_from_weights(rule.weights, fitness_mode);
}

bool is_more_general(const FuzzyRule& a, const FuzzyRule& b) {
    if (a.antecedent.size() != b.antecedent.size())
        throw std::invalid_argument("rules have different dimensions");
    for (std::size_t i = 0; i < a.antecedent.size(); ++i)
        if (!b.antecedent[i].is_subset_of(a.antecedent[i])) return false;
    return true;
}

bool can_subsume(const FuzzyRule& subsumer, const FuzzyRule& candidate,
                 double f0, double theta_sub) {
    return subsumer.consequent == candidate.consequent &&
           subsumer.fitness > f0 &&
           subsumer.experience > theta_sub &&
           is_more_general(subsumer, candidate);
}

} // namespace fuzzyucs
