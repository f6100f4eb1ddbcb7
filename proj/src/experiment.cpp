#include "fuzzyucs/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fuzzyucs/learner.hpp"
#include "fuzzyucs/serialize.hpp"

namespace fuzzyucs {

namespace {

std::string fmt(double value, const char* format = "%.10g") {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

} // namespace

EvalReport evaluate(const Population& pop, const Dataset& dataset, InferenceScheme scheme,
                    double theta_exploit, Rng& rng) {
    if (dataset.size() == 0) throw std::invalid_argument("evaluation set is empty");
    std::vector<int> predictions;
    predictions.reserve(dataset.size());
    double ignorance_total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        InferenceOutcome outcome = classify(pop, dataset.row(i), scheme, theta_exploit, rng);
        predictions.push_back(outcome.predicted);
        if (scheme == InferenceScheme::DempsterShafer)
            ignorance_total += outcome.ignorance.value_or(1.0);
    }
    EvalReport report;
    report.accuracy = accuracy(predictions, dataset.labels);
    report.macro_f1 = macro_f1(predictions, dataset.labels, pop.n_classes);
    if (scheme == InferenceScheme::DempsterShafer)
        report.mean_ignorance = ignorance_total / static_cast<double>(dataset.size());
    auto [macro, micro] = ruleset_sizes(pop);
    report.macro_rules = macro;
    report.micro_rules = micro;
    return report;
}

namespace {

std::vector<ResultRow> run_one(const Dataset& dataset, const std::string& dataset_name,
                               const ExperimentConfig& config, int run) {
    std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run);
    auto [train_set, test_set] = shuffle_split(dataset, {config.train_fraction, seed});

    auto train_start = std::chrono::steady_clock::now();
    Population pop = train(train_set, config, seed);
    double train_ms = elapsed_ms(train_start);

    std::vector<ResultRow> rows;
    for (InferenceScheme scheme : config.schemes) {
        for (const auto& [split_name, split_data] :
             {std::pair<const char*, const Dataset*>{"train", &train_set},
              std::pair<const char*, const Dataset*>{"test", &test_set}}) {
            Rng rng = make_stream(seed, "eval/" + scheme_name(scheme) + "/" + split_name);
            auto eval_start = std::chrono::steady_clock::now();
            EvalReport report =
                evaluate(pop, *split_data, scheme, config.exploit_experience, rng);
            ResultRow row;
            row.run = run;
            row.seed = seed;
            row.dataset = dataset_name;
            row.scheme = scheme_name(scheme);
            row.split = split_name;
            row.epochs = config.epochs;
            row.report = report;
            row.runtime_ms = train_ms + elapsed_ms(eval_start);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

std::vector<ResultRow> run_experiment(const Dataset& dataset, const std::string& dataset_name,
                                      const ExperimentConfig& config, int workers) {
    config.validate();
    if (workers < 1) workers = 1;
    int runs = config.runs;
    std::vector<std::vector<ResultRow>> per_run(runs);

    if (workers == 1 || runs == 1) {
        for (int r = 0; r < runs; ++r)
            per_run[r] = run_one(dataset, dataset_name, config, r);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            while (true) {
                int r = next.fetch_add(1);
                if (r >= runs) return;
                try {
                    per_run[r] = run_one(dataset, dataset_name, config, r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < std::min(workers, runs); ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<ResultRow> rows;
    for (std::vector<ResultRow>& chunk : per_run)
        for (ResultRow& row : chunk) rows.push_back(std::move(row));
    return rows;
}

std::string result_csv_header() {
    return "run,seed,dataset,scheme,split,epochs,accuracy,macro_f1,mean_ignorance,"
           "macro_rules,micro_rules,runtime_ms";
}

void write_result_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << result_csv_header() << '\n';
    for (const ResultRow& row : rows) {
        out << row.run << ',' << row.seed << ',' << row.dataset << ',' << row.scheme << ','
            << row.split << ',' << row.epochs << ',' << fmt(row.report.accuracy) << ','
            << fmt(row.report.macro_f1) << ',';
        if (row.report.mean_ignorance) out << fmt(*row.report.mean_ignorance);
        out << ',' << row.report.macro_rules << ',' << row.report.micro_rules << ','
            << fmt(row.runtime_ms, "%.3f") << '\n';
    }
}

void export_grid(const Population& pop, const GridOptions& options, std::ostream& out) {
    if (pop.n_features != 2)
        throw std::invalid_argument("grid export needs a 2-feature population, got " +
                                    std::to_string(pop.n_features) + " features");
    if (options.resolution < 2)
        throw std::invalid_argument("grid resolution must be at least 2");

    out << "x1,x2,pred";
    for (int c = 0; c < pop.n_classes; ++c) out << ",betp_" << c;
    for (int c = 0; c < pop.n_classes; ++c) out << ",mass_" << c;
    out << ",mass_theta\n";

    bool ds = options.scheme == InferenceScheme::DempsterShafer;
    Rng rng = make_stream(options.seed, "grid/" + scheme_name(options.scheme));
    int r = options.resolution;
    std::vector<EncodedValue> encoded(2);
    for (int iy = 0; iy < r; ++iy) {
        double x2 = static_cast<double>(iy) / (r - 1);
        encoded[1] = encode_value(pop.partition, x2);
        for (int ix = 0; ix < r; ++ix) {
            double x1 = static_cast<double>(ix) / (r - 1);
            encoded[0] = encode_value(pop.partition, x1);

            MatchSet filtered = experienced_match_set(pop, encoded, options.theta_exploit);
            out << fmt(x1, "%.17g") << ',' << fmt(x2, "%.17g") << ',';
            if (!ds) {
                if (filtered.size() == 0) {
                    out << -1;
                } else {
                    InferenceOutcome outcome = options.scheme == InferenceScheme::Vote
                                                   ? infer_vote(pop, filtered, rng)
                                                   : infer_swin(pop, filtered, rng);
                    out << outcome.predicted;
                }
                for (int c = 0; c < 2 * pop.n_classes + 1; ++c) out << ',';
                out << '\n';
                continue;
            }

            BeliefAssignment combined = BeliefAssignment::vacuous(pop.n_classes);
            int predicted = -1;
            if (filtered.size() > 0) {
                std::vector<BeliefAssignment> assignments;
                assignments.reserve(filtered.size());
                for (std::size_t k = 0; k < filtered.size(); ++k)
                    assignments.push_back(
                        from_rule(filtered.mu[k], pop.rules[filtered.rule[k]].weights));
                combined = combine_all(assignments);
                bool tie_broken = false;
                std::vector<double> scores = pignistic(combined);
                predicted = argmax_random_ties(scores, rng, tie_broken);
            }
            std::vector<double> betp = pignistic(combined);
            out << predicted;
            for (double p : betp) out << ',' << fmt(p, "%.17g");
            for (double b : combined.singleton) out << ',' << fmt(b, "%.17g");
            out << ',' << fmt(combined.theta, "%.17g") << '\n';
        }
    }
}

} // namespace fuzzyucs
