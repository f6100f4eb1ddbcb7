#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fuzzyucs/linguistic.hpp"

namespace fuzzyucs {

// F = v_max - sum of the other weights (range (-1, 1]) or plain v_max
// (range [0, 1]).
enum class FitnessMode { Signed, Unsigned };

// Experience accumulates matching degrees, or counts matches as whole units.
enum class ExperienceMode { Membership, Unit };

// One fuzzy classification rule. weights (v) holds the per-class soundness
// estimates cm/exp; consequent is argmax(v) with ties to the lowest class
// index, refreshed on every update.
struct FuzzyRule {
    std::vector<TermSet> antecedent;
    std::vector<double> weights;           // v
    std::vector<double> correct_matching;  // cm
    double fitness = 1.0;                  // F
    double experience = 0.0;               // exp
    int consequent = 0;
    int numerosity = 1;
    std::int64_t timestamp = 0;

    double weight() const { return weights[consequent]; }
};

int argmax_weight(std::span<const double> weights);

double fitness_from_weights(std::span<const double> weights, FitnessMode mode);

// Supervised update for a rule that matched with degree mu the input whose
// true class is correct_class. mu must be in (0, 1]; correct_class must be a
// valid class index.
void update_on_match(FuzzyRule& rule, double mu, int correct_class,
                     ExperienceMode experience_mode, FitnessMode fitness_mode);

// a is at least as general as b: per variable, a's term set contains b's.
bool is_more_general(const FuzzyRule& a, const FuzzyRule& b);

// Subsumption test: subsumer is more general, shares the consequent, and is
// strictly accurate (F > f0) and experienced (exp > theta_sub) enough.
bool can_subsume(const FuzzyRule& subsumer, const FuzzyRule& candidate,
                 double f0, double theta_sub);

} // namespace fuzzyucs
