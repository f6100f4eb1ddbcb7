#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fuzzyucs/config.hpp"
#include "fuzzyucs/data.hpp"
#include "fuzzyucs/inference.hpp"
#include "fuzzyucs/metrics.hpp"

namespace fuzzyucs {

struct ResultRow {
    int run = 0;
    std::uint64_t seed = 0;
    std::string dataset;
    std::string scheme;
    std::string split; // "train" / "test"
    int epochs = 0;
    EvalReport report;
    double runtime_ms = 0.0; // run's training time plus this row's inference time
};

// Multi-run protocol: run r splits with seed base_seed + r, trains one
// population, and evaluates every configured scheme on both splits. Rows
// come back ordered by run, scheme, then split regardless of worker count.
std::vector<ResultRow> run_experiment(const Dataset& dataset, const std::string& dataset_name,
                                      const ExperimentConfig& config, int workers = 1);

// Evaluates one scheme of a trained population on a dataset. The rng feeds
// tie-breaks only.
EvalReport evaluate(const Population& pop, const Dataset& dataset, InferenceScheme scheme,
                    double theta_exploit, Rng& rng);

std::string result_csv_header();
void write_result_csv(const std::vector<ResultRow>& rows, std::ostream& out);

struct GridOptions {
    int resolution = 200;
    InferenceScheme scheme = InferenceScheme::DempsterShafer;
    double theta_exploit = 10.0;
    std::uint64_t seed = 1;
};

// Prediction landscape of a 2-feature population over the unit square:
// resolution^2 lattice points (endpoints included, x1 varies fastest), one
// CSV row each. DS rows carry BetP and the combined masses; cells with no
// experienced match are marked pred = -1 with full ignorance.
void export_grid(const Population& pop, const GridOptions& options, std::ostream& out);

} // namespace fuzzyucs
