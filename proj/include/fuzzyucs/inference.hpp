#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fuzzyucs/config.hpp"
#include "fuzzyucs/evidence.hpp"
#include "fuzzyucs/learner.hpp"
#include "fuzzyucs/rng.hpp"

namespace fuzzyucs {

struct InferenceOutcome {
    int predicted = -1;
    std::optional<std::vector<double>> betp;  // Dempster-Shafer scheme only
    std::optional<double> ignorance;          // combined mass on Theta
    bool tie_broken = false;
};

// Match set restricted to rules with experience strictly above
// theta_exploit.
MatchSet experienced_match_set(const Population& pop, std::span<const EncodedValue> x,
                               double theta_exploit);

// Index of the maximum score; exact ties are resolved uniformly at random
// and flagged.
int argmax_random_ties(std::span<const double> scores, Rng& rng, bool& tie_broken);

// Additive vote: each rule adds mu * F * num to its consequent's score.
// Negative-fitness rules subtract. Exact score ties break uniformly at
// random.
InferenceOutcome infer_vote(const Population& pop, const MatchSet& match, Rng& rng);

// Single winner: the rule maximizing mu * F decides alone. Rules tied on the
// product pool their distinct consequents; a random pick among those counts
// as a broken tie.
InferenceOutcome infer_swin(const Population& pop, const MatchSet& match, Rng& rng);

// Evidential: every matching rule contributes a belief assignment, the
// combined assignment is projected to pignistic probabilities, and the
// maximum wins. Numerosity plays no role. Reports BetP and the combined
// ignorance mass.
InferenceOutcome infer_ds(const Population& pop, const MatchSet& match, Rng& rng);

// Full classification pipeline: match, filter by experience, dispatch on the
// scheme. An empty filtered match set yields a uniformly random class with
// tie_broken set.
InferenceOutcome classify(const Population& pop, std::span<const double> x,
                          InferenceScheme scheme, double theta_exploit, Rng& rng);

InferenceOutcome classify_encoded(const Population& pop, std::span<const EncodedValue> x,
                                  InferenceScheme scheme, double theta_exploit, Rng& rng);

// Combined belief assignment and pignistic probabilities for x, or nullopt
// when no experienced rule matches. Deterministic.
std::optional<std::pair<BeliefAssignment, std::vector<double>>>
explain_ds(const Population& pop, std::span<const double> x, double theta_exploit);

std::optional<std::pair<BeliefAssignment, std::vector<double>>>
explain_ds_encoded(const Population& pop, std::span<const EncodedValue> x, double theta_exploit);

} // namespace fuzzyucs
