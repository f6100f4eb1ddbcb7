#include "fuzzyucs/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fuzzyucs/errors.hpp"
#include "fuzzyucs/linguistic.hpp"

namespace fuzzyucs {

std::string scheme_name(InferenceScheme scheme) {
    switch (scheme) {
        case InferenceScheme::Vote: return "vote";
        case InferenceScheme::SingleWinner: return "swin";
        case InferenceScheme::DempsterShafer: return "ds";
    }
    throw ConfigError("unknown inference scheme");
}

InferenceScheme scheme_from_name(const std::string& name) {
    if (name == "vote") return InferenceScheme::Vote;
    if (name == "swin") return InferenceScheme::SingleWinner;
    if (name == "ds") return InferenceScheme::DempsterShafer;
    throw ConfigError("unknown scheme '" + name + "' (expected vote, swin, or ds)");
}

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw ConfigError(message);
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    double parsed = std::strtod(value.c_str(), &end);
    if (errno != 0 || end != value.c_str() + value.size() || value.empty())
        throw ConfigError(key + ": not a number: '" + value + "'");
    return parsed;
}

long long parse_int(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    long long parsed = std::strtoll(value.c_str(), &end, 10);
    if (errno != 0 || end != value.c_str() + value.size() || value.empty())
        throw ConfigError(key + ": not an integer: '" + value + "'");
    return parsed;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "yes" || value == "true" || value == "1") return true;
    if (value == "no" || value == "false" || value == "0") return false;
    throw ConfigError(key + ": not a boolean: '" + value + "'");
}

std::string trimmed(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void ExperimentConfig::validate() const {
    require(max_micro_rules >= 1, "N must be at least 1");
    require(fitness_threshold > 0.0 && fitness_threshold <= 1.0, "F0 must lie in (0, 1]");
    require(fitness_exponent > 0.0, "nu must be positive");
    require(crossover_prob >= 0.0 && crossover_prob <= 1.0, "chi must lie in [0, 1]");
    require(mutation_prob >= 0.0 && mutation_prob <= 1.0, "p_mut must lie in [0, 1]");
    require(deletion_fitness_fraction >= 0.0 && deletion_fitness_fraction <= 1.0,
            "delta must lie in [0, 1]");
    require(ga_interval >= 0.0, "theta_GA must be nonnegative");
    require(deletion_experience >= 0.0, "theta_del must be nonnegative");
    require(subsumption_experience >= 0.0, "theta_sub must be nonnegative");
    require(exploit_experience >= 0.0, "theta_exploit must be nonnegative");
    require(tournament_fraction >= 0.0 && tournament_fraction <= 1.0, "tau must lie in [0, 1]");
    require(dontcare_prob >= 0.0 && dontcare_prob <= 1.0, "P_hash must lie in [0, 1]");
    require(partition_terms >= 2 && partition_terms <= kMaxTerms,
            "partition_terms must lie in [2, 32]");
    require(!schemes.empty(), "at least one scheme is required");
    require(epochs >= 0, "epochs must be nonnegative");
    require(runs >= 1, "runs must be at least 1");
    require(train_fraction > 0.0 && train_fraction < 1.0,
            "train_fraction must lie strictly between 0 and 1");
}

void apply_config_entry(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "N") config.max_micro_rules = parse_int(key, value);
    else if (key == "F0") config.fitness_threshold = parse_double(key, value);
    else if (key == "nu") config.fitness_exponent = parse_double(key, value);
    else if (key == "chi") config.crossover_prob = parse_double(key, value);
    else if (key == "p_mut") config.mutation_prob = parse_double(key, value);
    else if (key == "delta") config.deletion_fitness_fraction = parse_double(key, value);
    else if (key == "theta_GA") config.ga_interval = parse_double(key, value);
    else if (key == "theta_del") config.deletion_experience = parse_double(key, value);
    else if (key == "theta_sub") config.subsumption_experience = parse_double(key, value);
    else if (key == "theta_exploit") config.exploit_experience = parse_double(key, value);
    else if (key == "tau") config.tournament_fraction = parse_double(key, value);
    else if (key == "P_hash") config.dontcare_prob = parse_double(key, value);
    else if (key == "doCorrectSetSubsumption") config.do_correct_set_subsumption = parse_bool(key, value);
    else if (key == "doGASubsumption") config.do_ga_subsumption = parse_bool(key, value);
    else if (key == "partition_terms") config.partition_terms = static_cast<int>(parse_int(key, value));
    else if (key == "fitness_mode") {
        if (value == "signed") config.fitness_mode = FitnessMode::Signed;
        else if (value == "unsigned") config.fitness_mode = FitnessMode::Unsigned;
        else throw ConfigError("fitness_mode: expected signed or unsigned, got '" + value + "'");
    } else if (key == "experience_mode") {
        if (value == "membership") config.experience_mode = ExperienceMode::Membership;
        else if (value == "unit") config.experience_mode = ExperienceMode::Unit;
        else throw ConfigError("experience_mode: expected membership or unit, got '" + value + "'");
    } else if (key == "schemes") {
        config.schemes.clear();
        std::istringstream stream(value);
        std::string token;
        while (std::getline(stream, token, ','))
            config.schemes.push_back(scheme_from_name(trimmed(token)));
        if (config.schemes.empty()) throw ConfigError("schemes: empty list");
    } else if (key == "epochs") config.epochs = static_cast<int>(parse_int(key, value));
    else if (key == "runs") config.runs = static_cast<int>(parse_int(key, value));
    else if (key == "base_seed") config.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "train_fraction") config.train_fraction = parse_double(key, value);
    else throw ConfigError("unknown configuration key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file " + path);
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::string stripped = trimmed(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        std::string key = trimmed(stripped.substr(0, eq));
        std::string value = trimmed(stripped.substr(eq + 1));
        apply_config_entry(config, key, value);
    }
    config.validate();
    return config;
}

std::uint64_t ExperimentConfig::hash() const {
    std::ostringstream canonical;
    canonical << max_micro_rules << '|' << fitness_threshold << '|' << fitness_exponent << '|'
              << crossover_prob << '|' << mutation_prob << '|' << deletion_fitness_fraction << '|'
              << ga_interval << '|' << deletion_experience << '|' << subsumption_experience << '|'
              << exploit_experience << '|' << tournament_fraction << '|' << dontcare_prob << '|'
              << do_correct_set_subsumption << '|' << do_ga_subsumption << '|'
              << partition_terms << '|' << static_cast<int>(fitness_mode) << '|'
              << static_cast<int>(experience_mode) << '|';
    for (InferenceScheme scheme : schemes) canonical << scheme_name(scheme) << ',';
    canonical << '|' << epochs << '|' << runs << '|' << base_seed << '|' << train_fraction;

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash_hex() const {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash()));
    return buffer;
}

} // namespace fuzzyucs
