#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fuzzyucs/config.hpp"
#include "fuzzyucs/data.hpp"
#include "fuzzyucs/linguistic.hpp"
#include "fuzzyucs/rng.hpp"
#include "fuzzyucs/rules.hpp"

namespace fuzzyucs {

// Rule base plus the problem frame it was trained for. Rules with
// numerosity 0 are tombstones awaiting compact(); size queries skip them.
struct Population {
    std::vector<FuzzyRule> rules;
    int n_classes = 0;
    int n_features = 0;
    LinguisticPartition partition;

    int macro_size() const;
    long long micro_size() const;
    void compact(); // drop tombstones

    // Index of the live rule with this exact antecedent and consequent, or
    // npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_duplicate(std::span<const TermSet> antecedent, int consequent) const;
};

// Rules matching the current input (mu > 0), with their matching degrees.
struct MatchSet {
    std::vector<std::size_t> rule;
    std::vector<double> mu;

    std::size_t size() const { return rule.size(); }
    double total_mu() const;
};

struct TrainerState {
    Population pop;
    ExperimentConfig config;
    std::int64_t t = 0;
    Rng shuffle_rng;
    Rng cover_rng;
    Rng ga_rng;
    Rng deletion_rng;

    TrainerState(const ExperimentConfig& config, int n_classes, int n_features, std::uint64_t seed);
};

MatchSet build_match_set(const Population& pop, std::span<const EncodedValue> x);

MatchSet build_correct_set(const Population& pop, const MatchSet& match, int correct_class);

// Fresh maximally matching rule for x: per variable the terms with positive
// membership (replaced by Don't Care with probability dontcare_prob; missing
// cells always Don't Care), one-hot weights on correct_class, F = 1.
FuzzyRule covering(const LinguisticPartition& partition, std::span<const EncodedValue> x,
                   int correct_class, int n_classes, double dontcare_prob,
                   Rng& rng, std::int64_t t);

// True when the numerosity-weighted mean timestamp of the correct set lags t
// by strictly more than theta_ga. Empty sets never trigger.
bool ga_should_trigger(const Population& pop, const MatchSet& correct_set,
                       std::int64_t t, double theta_ga);

// Tournament selection over the correct set. Rules with negative fitness are
// excluded; each eligible rule enters with probability 1-(1-tau)^num; the
// entrant with the highest fitness wins (ties to the lowest index). Returns
// Population::npos when no rule is eligible.
std::size_t select_parent(const Population& pop, const MatchSet& correct_set,
                          double tau, Rng& rng);

// Uniform crossover: with probability chi each variable's term sets swap
// between the children with probability 0.5; otherwise the children copy the
// parents verbatim. Either way the children restart their bookkeeping:
// exp = 0, cm = 0, v from the respective parent (renormalized), F from v,
// num = 1. Timestamps are assigned by the caller.
std::pair<FuzzyRule, FuzzyRule> crossover(const FuzzyRule& parent1, const FuzzyRule& parent2,
                                          double chi, FitnessMode fitness_mode, Rng& rng);

// Per variable, with probability p_mut, one uniformly chosen term flips in or
// out. A flip that would empty the set is redrawn once and skipped if the
// redraw would empty it too.
void mutate(FuzzyRule& rule, double p_mut, int num_terms, Rng& rng);

// One GA invocation on the correct set: stamps timestamps, selects two
// parents, produces two children, then for each child tries GA subsumption
// by a parent, then a duplicate merge, then insertion; finally deletes down
// to the population cap.
void ga_step(TrainerState& state, MatchSet& correct_set);

// The most general accurate and experienced rule of the correct set absorbs
// every rule it can subsume. Generality is the total term count; ties go to
// higher experience, then earlier position. Absorbed rules are tombstoned
// (numerosity moves to the subsumer) and dropped from correct_set.
void correct_set_subsumption(TrainerState& state, MatchSet& correct_set);

// Roulette deletion until micro size fits the cap. Votes are numerosity
// times a penalty that punishes experienced low-fitness rules. Compacts
// tombstones before returning.
void deletion(TrainerState& state);

// One supervised step: match, cover if the correct set's total matching
// degree is below 1, update every matching rule, subsume, maybe run the GA,
// enforce the cap, advance t.
void train_step(TrainerState& state, std::span<const double> x, int correct_class);

void train_step_encoded(TrainerState& state, std::span<const EncodedValue> x, int correct_class);

// Full training protocol: epochs passes over the data, each in a fresh
// seeded shuffle order. The seed defaults to config.base_seed.
Population train(const Dataset& dataset, const ExperimentConfig& config);
Population train(const Dataset& dataset, const ExperimentConfig& config, std::uint64_t seed);

} // namespace fuzzyucs
