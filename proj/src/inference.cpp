#include "fuzzyucs/inference.hpp"

#include <algorithm>
#include <stdexcept>

namespace fuzzyucs {

MatchSet experienced_match_set(const Population& pop, std::span<const EncodedValue> x,
                               double theta_exploit) {
    MatchSet match = build_match_set(pop, x);
    MatchSet filtered;
    for (std::size_t k = 0; k < match.size(); ++k) {
        if (pop.rules[match.rule[k]].experience > theta_exploit) {
            filtered.rule.push_back(match.rule[k]);
            filtered.mu.push_back(match.mu[k]);
        }
    }
    return filtered;
}

int argmax_random_ties(std::span<const double> scores, Rng& rng, bool& tie_broken) {
    double best = scores[0];
    for (double s : scores) best = std::max(best, s);
    std::vector<int> tied;
    for (int c = 0; c < static_cast<int>(scores.size()); ++c)
        if (scores[c] == best) tied.push_back(c);
    if (tied.size() == 1) {
        tie_broken = false;
        return tied.front();
    }
    tie_broken = true;
    return tied[rng.next_index(tied.size())];
}

InferenceOutcome infer_vote(const Population& pop, const MatchSet& match, Rng& rng) {
    if (match.size() == 0) throw std::invalid_argument("match set is empty");
    std::vector<double> votes(pop.n_classes, 0.0);
    for (std::size_t k = 0; k < match.size(); ++k) {
        const FuzzyRule& rule = pop.rules[match.rule[k]];
        votes[rule.consequent] += match.mu[k] * rule.fitness * rule.numerosity;
    }
    InferenceOutcome outcome;
    outcome.predicted = argmax_random_ties(votes, rng, outcome.tie_broken);
    return outcome;
}

InferenceOutcome infer_swin(const Population& pop, const MatchSet& match, Rng& rng) {
    if (match.size() == 0) throw std::invalid_argument("match set is empty");
    double best = match.mu[0] * pop.rules[match.rule[0]].fitness;
    for (std::size_t k = 1; k < match.size(); ++k)
        best = std::max(best, match.mu[k] * pop.rules[match.rule[k]].fitness);

    std::vector<int> classes;
    for (std::size_t k = 0; k < match.size(); ++k) {
        if (match.mu[k] * pop.rules[match.rule[k]].fitness != best) continue;
        int consequent = pop.rules[match.rule[k]].consequent;
        if (std::find(classes.begin(), classes.end(), consequent) == classes.end())
            classes.push_back(consequent);
    }
    InferenceOutcome outcome;
    if (classes.size() == 1) {
        outcome.predicted = classes.front();
    } else {
        outcome.tie_broken = true;
        outcome.predicted = classes[rng.next_index(classes.size())];
    }
    return outcome;
}

InferenceOutcome infer_ds(const Population& pop, const MatchSet& match, Rng& rng) {
    if (match.size() == 0) throw std::invalid_argument("match set is empty");
    std::vector<BeliefAssignment> assignments;
    assignments.reserve(match.size());
    for (std::size_t k = 0; k < match.size(); ++k)
        assignments.push_back(from_rule(match.mu[k], pop.rules[match.rule[k]].weights));

    BeliefAssignment combined = combine_all(assignments);
    std::vector<double> betp = pignistic(combined);

    InferenceOutcome outcome;
    outcome.predicted = argmax_random_ties(betp, rng, outcome.tie_broken);
    outcome.ignorance = combined.theta;
    outcome.betp = std::move(betp);
    return outcome;
}

InferenceOutcome classify_encoded(const Population& pop, std::span<const EncodedValue> x,
                                  InferenceScheme scheme, double theta_exploit, Rng& rng) {
    MatchSet filtered = experienced_match_set(pop, x, theta_exploit);
    if (filtered.size() == 0) {
        InferenceOutcome outcome;
        outcome.predicted = rng.next_int(pop.n_classes);
        outcome.tie_broken = true;
        return outcome;
    }
    switch (scheme) {
        case InferenceScheme::Vote: return infer_vote(pop, filtered, rng);
        case InferenceScheme::SingleWinner: return infer_swin(pop, filtered, rng);
        case InferenceScheme::DempsterShafer: return infer_ds(pop, filtered, rng);
    }
    throw std::invalid_argument("unknown inference scheme");
}

InferenceOutcome classify(const Population& pop, std::span<const double> x,
                          InferenceScheme scheme, double theta_exploit, Rng& rng) {
    std::vector<EncodedValue> encoded = encode_row(pop.partition, x);
    return classify_encoded(pop, encoded, scheme, theta_exploit, rng);
}

std::optional<std::pair<BeliefAssignment, std::vector<double>>>
explain_ds_encoded(const Population& pop, std::span<const EncodedValue> x, double theta_exploit) {
    MatchSet filtered = experienced_match_set(pop, x, theta_exploit);
    if (filtered.size() == 0) return std::nullopt;
    std::vector<BeliefAssignment> assignments;
    assignments.reserve(filtered.size());
    for (std::size_t k = 0; k < filtered.size(); ++k)
        assignments.push_back(from_rule(filtered.mu[k], pop.rules[filtered.rule[k]].weights));
    BeliefAssignment combined = combine_all(assignments);
    std::vector<double> betp = pignistic(combined);
    return std::make_pair(std::move(combined), std::move(betp));
}

std::optional<std::pair<BeliefAssignment, std::vector<double>>>
explain_ds(const Population& pop, std::span<const double> x, double theta_exploit) {
    std::vector<EncodedValue> encoded = encode_row(pop.partition, x);
    return explain_ds_encoded(pop, encoded, theta_exploit);
}

} // namespace fuzzyucs
