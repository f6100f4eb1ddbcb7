#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzyucs/rules.hpp"

namespace fuzzyucs {

enum class InferenceScheme { Vote, SingleWinner, DempsterShafer };

std::string scheme_name(InferenceScheme scheme);            // "vote" / "swin" / "ds"
InferenceScheme scheme_from_name(const std::string& name);  // throws ConfigError

// Hyperparameters and run protocol settings. Config files use the short
// key=value names noted next to each field; command-line flags override file
// values field by field.
struct ExperimentConfig {
    // Rule base and learning pressure.
    long long max_micro_rules = 2000;          // N
    double fitness_threshold = 0.99;           // F0
    double fitness_exponent = 1.0;             // nu (parsed and validated; the linear fitness keeps it inert)
    double crossover_prob = 0.8;               // chi
    double mutation_prob = 0.04;               // p_mut
    double deletion_fitness_fraction = 0.1;    // delta
    double ga_interval = 50.0;                 // theta_GA
    double deletion_experience = 50.0;         // theta_del
    double subsumption_experience = 50.0;      // theta_sub
    double exploit_experience = 10.0;          // theta_exploit
    double tournament_fraction = 0.4;          // tau
    double dontcare_prob = 0.33;               // P_hash
    bool do_correct_set_subsumption = true;    // doCorrectSetSubsumption
    bool do_ga_subsumption = true;             // doGASubsumption

    // Representation and update variants.
    int partition_terms = 5;                   // partition_terms (L)
    FitnessMode fitness_mode = FitnessMode::Signed;          // fitness_mode = signed|unsigned
    ExperienceMode experience_mode = ExperienceMode::Membership; // experience_mode = membership|unit

    // Run protocol.
    std::vector<InferenceScheme> schemes = {InferenceScheme::Vote,
                                            InferenceScheme::SingleWinner,
                                            InferenceScheme::DempsterShafer}; // schemes
    int epochs = 50;                           // epochs
    int runs = 30;                             // runs
    std::uint64_t base_seed = 1;               // base_seed
    double train_fraction = 0.9;               // train_fraction

    // Throws ConfigError on out-of-range values.
    void validate() const;

    // Stable hash of every field, for stamping saved populations.
    std::uint64_t hash() const;
    std::string hash_hex() const;
};

// Flat key=value file, one pair per line, '#' comments, keys as listed in
// ExperimentConfig. Unknown keys raise ConfigError.
ExperimentConfig load_config_file(const std::string& path);

// Applies one key=value pair; shared by the file loader and CLI overrides.
void apply_config_entry(ExperimentConfig& config, const std::string& key, const std::string& value);

} // namespace fuzzyucs
