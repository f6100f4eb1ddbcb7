#include "fuzzyucs/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fuzzyucs/errors.hpp"

namespace fuzzyucs {

int Population::macro_size() const {
    int count = 0;
    for (const FuzzyRule& rule : rules)
        if (rule.numerosity > 0) ++count;
    return count;
}

long long Population::micro_size() const {
    long long count = 0;
    for (const FuzzyRule& rule : rules) count += rule.numerosity;
    return count;
}

void Population::compact() {
    std::erase_if(rules, [](const FuzzyRule& rule) { return rule.numerosity <= 0; });
}

std::size_t Population::find_duplicate(std::span<const TermSet> antecedent, int consequent) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const FuzzyRule& rule = rules[i];
        if (rule.numerosity <= 0 || rule.consequent != consequent) continue;
        if (std::equal(rule.antecedent.begin(), rule.antecedent.end(),
                       antecedent.begin(), antecedent.end()))
            return i;
    }
    return npos;
}

double MatchSet::total_mu() const {
    double sum = 0.0;
    for (double m : mu) sum += m;
    return sum;
}

TrainerState::TrainerState(const ExperimentConfig& config_, int n_classes, int n_features,
                           std::uint64_t seed)
    : config(config_),
      shuffle_rng(make_stream(seed, "train/shuffle")),
      cover_rng(make_stream(seed, "train/covering")),
      ga_rng(make_stream(seed, "train/ga")),
      deletion_rng(make_stream(seed, "train/deletion")) {
    config.validate();
    if (n_classes < 2) throw std::invalid_argument("need at least 2 classes");
    if (n_features < 1) throw std::invalid_argument("need at least 1 feature");
    pop.n_classes = n_classes;
    pop.n_features = n_features;
    pop.partition = make_partition(config.partition_terms);
}

MatchSet build_match_set(const Population& pop, std::span<const EncodedValue> x) {
    if (static_cast<int>(x.size()) != pop.n_features)
        throw std::invalid_argument("input dimension does not match the population");
    MatchSet match;
    for (std::size_t i = 0; i < pop.rules.size(); ++i) {
        const FuzzyRule& rule = pop.rules[i];
        if (rule.numerosity <= 0) continue;
        double mu = rule_matching_degree(rule.antecedent, x);
        if (mu > 0.0) {
            match.rule.push_back(i);
            match.mu.push_back(mu);
        }
    }
    return match;
}

MatchSet build_correct_set(const Population& pop, const MatchSet& match, int correct_class) {
    MatchSet correct;
    for (std::size_t k = 0; k < match.size(); ++k) {
        if (pop.rules[match.rule[k]].consequent == correct_class) {
            correct.rule.push_back(match.rule[k]);
            correct.mu.push_back(match.mu[k]);
        }
    }
    return correct;
}

FuzzyRule covering(const LinguisticPartition& partition, std::span<const EncodedValue> x,
                   int correct_class, int n_classes, double dontcare_prob,
                   Rng& rng, std::int64_t t) {
    if (correct_class < 0 || correct_class >= n_classes)
        throw std::invalid_argument("class index out of range: " + std::to_string(correct_class));
    FuzzyRule rule;
    rule.antecedent.reserve(x.size());
    TermSet dontcare = TermSet::full(partition.num_terms);
    for (const EncodedValue& value : x) {
        if (value.missing || rng.bernoulli(dontcare_prob)) {
            rule.antecedent.push_back(dontcare);
            continue;
        }
        std::uint32_t mask = 0;
        if (value.mu_lo > 0.0) mask |= 1u << (value.lo - 1);
        if (value.mu_hi > 0.0) mask |= 1u << (value.hi - 1);
        rule.antecedent.push_back(TermSet::from_mask(mask));
    }
    rule.weights.assign(n_classes, 0.0);
    rule.weights[correct_class] = 1.0;
    rule.correct_matching.assign(n_classes, 0.0);
    rule.consequent = correct_class;
    rule.fitness = 1.0;
    rule.experience = 0.0;
    rule.numerosity = 1;
    rule.timestamp = t;
    return rule;
}

bool ga_should_trigger(const Population& pop, const MatchSet& correct_set,
                       std::int64_t t, double theta_ga) {
    if (correct_set.size() == 0) return false;
    double weighted_ts = 0.0;
    double total_num = 0.0;
    for (std::size_t rule_index : correct_set.rule) {
        const FuzzyRule& rule = pop.rules[rule_index];
        weighted_ts += static_cast<double>(rule.numerosity) * static_cast<double>(rule.timestamp);
        total_num += static_cast<double>(rule.numerosity);
    }
    return static_cast<double>(t) - weighted_ts / total_num > theta_ga;
}

std::size_t select_parent(const Population& pop, const MatchSet& correct_set,
                          double tau, Rng& rng) {
    std::vector<std::size_t> eligible;
    eligible.reserve(correct_set.size());
    for (std::size_t rule_index : correct_set.rule)
        if (pop.rules[rule_index].fitness >= 0.0) eligible.push_back(rule_index);
    if (eligible.empty()) return Population::npos;

    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::size_t winner = Population::npos;
        for (std::size_t rule_index : eligible) {
            const FuzzyRule& rule = pop.rules[rule_index];
            double enter_prob = 1.0 - std::pow(1.0 - tau, static_cast<double>(rule.numerosity));
            if (!rng.bernoulli(enter_prob)) continue;
            if (winner == Population::npos || rule.fitness > pop.rules[winner].fitness)
                winner = rule_index;
        }
        if (winner != Population::npos) return winner;
    }
    // Reachable only with tau = 0: fall back to the fittest eligible rule.
    std::size_t best = eligible.front();
    for (std::size_t rule_index : eligible)
        if (pop.rules[rule_index].fitness > pop.rules[best].fitness) best = rule_index;
    return best;
}

namespace {

// Restarts a child's life: empty history, class weights inherited from its
// parent.
void reset_child(FuzzyRule& child, const FuzzyRule& parent, FitnessMode fitness_mode) {
    std::size_t n = parent.weights.size();
    child.weights = parent.weights;
    double total = 0.0;
    for (double w : child.weights) total += w;
    if (total > 0.0)
        for (double& w : child.weights) w /= total;
    else
        child.weights.assign(n, 1.0 / static_cast<double>(n));
    child.correct_matching.assign(n, 0.0);
    child.experience = 0.0;
    child.consequent = argmax_weight(child.weights);
    child.fitness = fitness_from_weights(child.weights, fitness_mode);
    child.numerosity = 1;
    child.timestamp = 0;
}

} // namespace

std::pair<FuzzyRule, FuzzyRule> crossover(const FuzzyRule& parent1, const FuzzyRule& parent2,
                                          double chi, FitnessMode fitness_mode, Rng& rng) {
    if (parent1.antecedent.size() != parent2.antecedent.size())
        throw std::invalid_argument("parents have different dimensions");
    FuzzyRule child1 = parent1;
    FuzzyRule child2 = parent2;
    if (rng.bernoulli(chi)) {
        for (std::size_t i = 0; i < child1.antecedent.size(); ++i)
            if (rng.bernoulli(0.5)) std::swap(child1.antecedent[i], child2.antecedent[i]);
    }
    reset_child(child1, parent1, fitness_mode);
    reset_child(child2, parent2, fitness_mode);
    return {std::move(child1), std::move(child2)};
}

void mutate(FuzzyRule& rule, double p_mut, int num_terms, Rng& rng) {
    for (TermSet& terms : rule.antecedent) {
        if (!rng.bernoulli(p_mut)) continue;
        int term = rng.next_int(num_terms) + 1;
        if (terms.count() == 1 && terms.contains(term)) {
            term = rng.next_int(num_terms) + 1; // one redraw
            if (terms.count() == 1 && terms.contains(term)) continue;
        }
        terms = terms.toggled(term);
    }
}

namespace {

void insert_child(TrainerState& state, FuzzyRule&& child,
                  std::size_t parent1, std::size_t parent2) {
    Population& pop = state.pop;
    if (state.config.do_ga_subsumption) {
        for (std::size_t parent_index : {parent1, parent2}) {
            FuzzyRule& parent = pop.rules[parent_index];
            if (parent.numerosity > 0 &&
                can_subsume(parent, child, state.config.fitness_threshold,
                            state.config.subsumption_experience)) {
                parent.numerosity += 1;
                return;
            }
        }
    }
    std::size_t duplicate = pop.find_duplicate(child.antecedent, child.consequent);
    if (duplicate != Population::npos) {
        pop.rules[duplicate].numerosity += 1;
        return;
    }
    pop.rules.push_back(std::move(child));
}

} // namespace

void ga_step(TrainerState& state, MatchSet& correct_set) {
    Population& pop = state.pop;
    for (std::size_t rule_index : correct_set.rule)
        pop.rules[rule_index].timestamp = state.t;

    std::size_t parent1 = select_parent(pop, correct_set, state.config.tournament_fraction,
                                        state.ga_rng);
    if (parent1 == Population::npos) return; // no eligible parent, skip this cycle
    std::size_t parent2 = select_parent(pop, correct_set, state.config.tournament_fraction,
                                        state.ga_rng);

    auto [child1, child2] = crossover(pop.rules[parent1], pop.rules[parent2],
                                      state.config.crossover_prob, state.config.fitness_mode,
                                      state.ga_rng);
    child1.timestamp = state.t;
    child2.timestamp = state.t;
    mutate(child1, state.config.mutation_prob, pop.partition.num_terms, state.ga_rng);
    mutate(child2, state.config.mutation_prob, pop.partition.num_terms, state.ga_rng);

    insert_child(state, std::move(child1), parent1, parent2);
    insert_child(state, std::move(child2), parent1, parent2);
    deletion(state);
}

void correct_set_subsumption(TrainerState& state, MatchSet& correct_set) {
    Population& pop = state.pop;
    std::size_t best = Population::npos;
    int best_generality = -1;
    for (std::size_t rule_index : correct_set.rule) {
        const FuzzyRule& rule = pop.rules[rule_index];
        if (!(rule.fitness > state.config.fitness_threshold &&
              rule.experience > state.config.subsumption_experience))
            continue;
        int generality = 0;
        for (TermSet terms : rule.antecedent) generality += terms.count();
        if (best == Population::npos || generality > best_generality ||
            (generality == best_generality && rule.experience > pop.rules[best].experience))
            { best = rule_index; best_generality = generality; }
    }
    if (best == Population::npos) return;

    FuzzyRule& subsumer = pop.rules[best];
    MatchSet kept;
    for (std::size_t k = 0; k < correct_set.size(); ++k) {
        std::size_t rule_index = correct_set.rule[k];
        if (rule_index != best &&
            can_subsume(subsumer, pop.rules[rule_index],
                        state.config.fitness_threshold, state.config.subsumption_experience)) {
            subsumer.numerosity += pop.rules[rule_index].numerosity;
            pop.rules[rule_index].numerosity = 0; // tombstone, compacted later
        } else {
            kept.rule.push_back(rule_index);
            kept.mu.push_back(correct_set.mu[k]);
        }
    }
    correct_set = std::move(kept);
}

void deletion(TrainerState& state) {
    Population& pop = state.pop;
    while (pop.micro_size() > state.config.max_micro_rules) {
        double total_num = 0.0;
        double total_fitness = 0.0;
        for (const FuzzyRule& rule : pop.rules) {
            if (rule.numerosity <= 0) continue;
            total_num += static_cast<double>(rule.numerosity);
            total_fitness += static_cast<double>(rule.numerosity) * std::max(rule.fitness, 0.0);
        }
        double average_fitness = total_fitness / total_num;

        auto vote = [&](const FuzzyRule& rule) {
            double penalty = 1.0;
            if (rule.experience > state.config.deletion_experience &&
                rule.fitness < state.config.deletion_fitness_fraction * average_fitness)
                penalty = average_fitness / std::max(rule.fitness, 1e-6);
            return static_cast<double>(rule.numerosity) * penalty;
        };

        double total_votes = 0.0;
        for (const FuzzyRule& rule : pop.rules)
            if (rule.numerosity > 0) total_votes += vote(rule);

        std::size_t victim = Population::npos;
        double pick = state.deletion_rng.next_double() * total_votes;
        if (total_votes > 0.0) {
            double cursor = 0.0;
            for (std::size_t i = 0; i < pop.rules.size(); ++i) {
                if (pop.rules[i].numerosity <= 0) continue;
                cursor += vote(pop.rules[i]);
                if (pick < cursor) { victim = i; break; }
            }
        }
        if (victim == Population::npos) {
            // All votes zero (every rule experienced with negative fitness) or
            // rounding pushed the pick past the end: fall back to numerosity.
            double cursor = 0.0;
            double numerosity_pick = state.deletion_rng.next_double() * total_num;
            for (std::size_t i = 0; i < pop.rules.size(); ++i) {
                if (pop.rules[i].numerosity <= 0) continue;
                cursor += static_cast<double>(pop.rules[i].numerosity);
                if (numerosity_pick < cursor) { victim = i; break; }
                victim = i; // guard against rounding past the last live rule
            }
        }
        if (victim == Population::npos) break; // empty population, nothing to delete
        pop.rules[victim].numerosity -= 1;
    }
    pop.compact();
}

void train_step_encoded(TrainerState& state, std::span<const EncodedValue> x, int correct_class) {
    if (correct_class < 0 || correct_class >= state.pop.n_classes)
        throw std::invalid_argument("class index out of range: " + std::to_string(correct_class));

    MatchSet match = build_match_set(state.pop, x);
    MatchSet correct = build_correct_set(state.pop, match, correct_class);

    if (correct.total_mu() < 1.0) {
        FuzzyRule covered = covering(state.pop.partition, x, correct_class, state.pop.n_classes,
                                     state.config.dontcare_prob, state.cover_rng, state.t);
        state.pop.rules.push_back(std::move(covered));
        std::size_t covered_index = state.pop.rules.size() - 1;
        match.rule.push_back(covered_index);
        match.mu.push_back(1.0);
        correct.rule.push_back(covered_index);
        correct.mu.push_back(1.0);
    }

    for (std::size_t k = 0; k < match.size(); ++k)
        update_on_match(state.pop.rules[match.rule[k]], match.mu[k], correct_class,
                        state.config.experience_mode, state.config.fitness_mode);

    if (state.config.do_correct_set_subsumption)
        correct_set_subsumption(state, correct);

    if (ga_should_trigger(state.pop, correct, state.t, state.config.ga_interval))
        ga_step(state, correct);

    deletion(state);
    state.t += 1;
}

void train_step(TrainerState& state, std::span<const double> x, int correct_class) {
    std::vector<EncodedValue> encoded = encode_row(state.pop.partition, x);
    train_step_encoded(state, encoded, correct_class);
}

Population train(const Dataset& dataset, const ExperimentConfig& config) {
    return train(dataset, config, config.base_seed);
}

Population train(const Dataset& dataset, const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    if (dataset.size() == 0) throw std::invalid_argument("training set is empty");
    if (dataset.class_names.size() < 2) throw std::invalid_argument("need at least 2 classes");

    TrainerState state(config, static_cast<int>(dataset.class_names.size()),
                       dataset.n_features, seed);

    std::vector<std::vector<EncodedValue>> encoded;
    encoded.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i)
        encoded.push_back(encode_row(state.pop.partition, dataset.row(i)));

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        state.shuffle_rng.shuffle(order);
        for (std::size_t i : order)
            train_step_encoded(state, encoded[i], dataset.labels[i]);
    }
    state.pop.compact();
    return std::move(state.pop);
}

} // namespace fuzzyucs
