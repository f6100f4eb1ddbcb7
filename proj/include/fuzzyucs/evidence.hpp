#pragma once

#include <span>
#include <vector>

namespace fuzzyucs {

// Basic belief assignment over a frame of n class hypotheses, restricted to
// the n singletons plus the whole frame Theta. Masses are nonnegative and
// sum to 1 within 1e-9.
struct BeliefAssignment {
    std::vector<double> singleton;
    double theta = 1.0;

    static BeliefAssignment vacuous(int num_classes);
};

// Intermediate state of a conjunctive fold: masses are kept unnormalized and
// the accumulated conflict is tracked explicitly, so normalization happens
// once at the end instead of after every combination step.
struct UnnormalizedAssignment {
    std::vector<double> singleton;
    double theta = 0.0;
    double conflict = 0.0;

    static UnnormalizedAssignment vacuous(int num_classes);
};

// Evidence contributed by one rule that matched with degree mu: mass mu*v_i
// on each singleton, remainder on Theta. mu must be in [0, 1]; v entries
// must be nonnegative with sum at most 1 (a fully trained rule has sum 1;
// unit-mode experience leaves it subnormalized).
BeliefAssignment from_rule(double mu, std::span<const double> v);

// One conjunctive (unnormalized Dempster) combination step. Singleton masses
// survive through agreement or through the other source's ignorance; Theta
// survives only through joint ignorance; everything else is conflict.
UnnormalizedAssignment conjunctive_combine(const UnnormalizedAssignment& acc,
                                           const BeliefAssignment& m);

// Folds all assignments starting from the vacuous one, then normalizes by
// 1/(1-conflict). Total conflict (within 1e-12 of 1) falls back to the
// ignorance-absorbing rule: all mass moves to Theta.
BeliefAssignment combine_all(std::span<const BeliefAssignment> assignments);

// Pignistic probability: each singleton receives its own mass plus an equal
// share of Theta's.
std::vector<double> pignistic(const BeliefAssignment& assignment);

// --- Full power-set reference implementation -------------------------------
//
// Exponential-cost oracle used to validate the restricted-core fast path.
// Masses are indexed by subset bitmask over a frame of at most 5 hypotheses;
// index 0 (the empty set) must carry no mass.

struct PowersetMass {
    int num_hypotheses = 0;
    std::vector<double> mass; // size 2^num_hypotheses

    static PowersetMass from_assignment(const BeliefAssignment& assignment);
};

struct PowersetCombineResult {
    PowersetMass combined; // conjunctive masses on nonempty subsets, unnormalized
    double conflict = 0.0; // mass that fell on the empty set
};

PowersetCombineResult powerset_combine(const PowersetMass& a, const PowersetMass& b);

} // namespace fuzzyucs
