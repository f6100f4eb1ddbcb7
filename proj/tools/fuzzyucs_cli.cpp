// Command-line front end: train populations, evaluate or inspect them, run
// the full multi-run experiment protocol, and generate benchmark datasets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzyucs/data.hpp"
#include "fuzzyucs/errors.hpp"
#include "fuzzyucs/experiment.hpp"
#include "fuzzyucs/inference.hpp"
#include "fuzzyucs/learner.hpp"
#include "fuzzyucs/serialize.hpp"

namespace {

using namespace fuzzyucs;

struct DataSource {
    std::string csv_path;
    std::string generator;
    int count = 6000;
    std::uint64_t gen_seed = 1;

    void attach(CLI::App* cmd) {
        auto* data = cmd->add_option("--data", csv_path, "CSV file (header row, class column last)");
        auto* gen = cmd->add_option("--gen", generator, "builtin generator: rmux, rmaj, or rcar");
        cmd->add_option("--count", count, "sample count for --gen")->check(CLI::PositiveNumber);
        cmd->add_option("--gen-seed", gen_seed, "seed for --gen");
        data->excludes(gen);
        gen->excludes(data);
    }

    Dataset load() const {
        if (!csv_path.empty()) return encode_and_normalize(load_csv(csv_path));
        if (!generator.empty()) return generate_dataset(generator, count, gen_seed);
        throw ConfigError("either --data or --gen is required");
    }

    std::string name() const {
        if (!generator.empty()) return generator;
        return std::filesystem::path(csv_path).stem().string();
    }
};

struct ConfigSource {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<int> epochs;
    std::optional<int> runs;
    std::optional<std::string> schemes;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value configuration file");
        cmd->add_option("--set", overrides, "override one configuration key (key=value, repeatable)");
        cmd->add_option("--epochs", epochs, "training passes over the data");
        cmd->add_option("--runs", runs, "number of independent runs");
        cmd->add_option("--schemes", schemes, "comma-separated inference schemes (vote,swin,ds)");
        cmd->add_option("--seed", seed, "base seed");
    }

    ExperimentConfig build() const {
        ExperimentConfig config;
        if (!config_path.empty()) config = load_config_file(config_path);
        for (const std::string& entry : overrides) {
            std::size_t eq = entry.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + entry + "'");
            apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
        }
        if (epochs) config.epochs = *epochs;
        if (runs) config.runs = *runs;
        if (schemes) apply_config_entry(config, "schemes", *schemes);
        if (seed) config.base_seed = *seed;
        config.validate();
        return config;
    }
};

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    return file;
}

int run(int argc, char** argv) {
    CLI::App app{"Fuzzy classifier system with evidential, voting, and single-winner inference"};
    app.require_subcommand(1);

    // --- train ---
    auto* train_cmd = app.add_subcommand("train", "train a population on a full dataset and save it");
    DataSource train_data;
    ConfigSource train_config;
    std::string train_out;
    train_data.attach(train_cmd);
    train_config.attach(train_cmd);
    train_cmd->add_option("--out", train_out, "population JSON file")->required();

    // --- eval ---
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a saved population on a dataset");
    DataSource eval_data;
    ConfigSource eval_config;
    std::string eval_pop, eval_out;
    eval_data.attach(eval_cmd);
    eval_config.attach(eval_cmd);
    eval_cmd->add_option("--pop", eval_pop, "population JSON file")->required();
    eval_cmd->add_option("--out", eval_out, "result CSV file (default stdout)");

    // --- experiment ---
    auto* exp_cmd = app.add_subcommand("experiment", "multi-run split/train/evaluate protocol");
    DataSource exp_data;
    ConfigSource exp_config;
    std::string exp_out;
    int exp_workers = 1;
    exp_data.attach(exp_cmd);
    exp_config.attach(exp_cmd);
    exp_cmd->add_option("--out", exp_out, "result CSV file (default stdout)");
    exp_cmd->add_option("--workers", exp_workers, "parallel runs")->check(CLI::PositiveNumber);

    // --- grid ---
    auto* grid_cmd = app.add_subcommand("grid", "prediction landscape of a 2-feature population");
    ConfigSource grid_config;
    std::string grid_pop, grid_out, grid_scheme = "ds";
    int grid_resolution = 200;
    grid_config.attach(grid_cmd);
    grid_cmd->add_option("--pop", grid_pop, "population JSON file")->required();
    grid_cmd->add_option("--resolution", grid_resolution, "lattice points per axis");
    grid_cmd->add_option("--scheme", grid_scheme, "inference scheme for the pred column");
    grid_cmd->add_option("--out", grid_out, "grid CSV file (default stdout)");

    // --- gen ---
    auto* gen_cmd = app.add_subcommand("gen", "write a generated benchmark dataset as CSV");
    std::string gen_name, gen_out;
    int gen_count = 6000;
    std::uint64_t gen_seed = 1;
    gen_cmd->add_option("--name", gen_name, "generator: rmux, rmaj, or rcar")->required();
    gen_cmd->add_option("--count", gen_count, "sample count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 1;
    }

    if (train_cmd->parsed()) {
        ExperimentConfig config = train_config.build();
        Dataset dataset = train_data.load();
        Population pop = train(dataset, config);
        save_population(pop, dataset.class_names, config, train_out);
        std::cerr << "trained " << pop.macro_size() << " rules (" << pop.micro_size()
                  << " micro) on " << dataset.size() << " samples -> " << train_out << '\n';
        return 0;
    }

    if (eval_cmd->parsed()) {
        ExperimentConfig config = eval_config.build();
        LoadedPopulation loaded = load_population(eval_pop);
        Dataset dataset = eval_data.load();
        if (dataset.n_features != loaded.pop.n_features)
            throw DataError("dataset has " + std::to_string(dataset.n_features) +
                            " features, population expects " +
                            std::to_string(loaded.pop.n_features));
        if (static_cast<int>(dataset.class_names.size()) > loaded.pop.n_classes)
            throw DataError("dataset declares more classes than the population");

        std::vector<ResultRow> rows;
        for (InferenceScheme scheme : config.schemes) {
            Rng rng = make_stream(config.base_seed, "eval/" + scheme_name(scheme) + "/eval");
            ResultRow row;
            row.run = 0;
            row.seed = config.base_seed;
            row.dataset = eval_data.name();
            row.scheme = scheme_name(scheme);
            row.split = "eval";
            row.epochs = 0;
            row.report = evaluate(loaded.pop, dataset, scheme, config.exploit_experience, rng);
            rows.push_back(std::move(row));
        }
        if (eval_out.empty()) {
            write_result_csv(rows, std::cout);
        } else {
            std::ofstream file = open_output(eval_out);
            write_result_csv(rows, file);
        }
        return 0;
    }

    if (exp_cmd->parsed()) {
        ExperimentConfig config = exp_config.build();
        Dataset dataset = exp_data.load();
        std::vector<ResultRow> rows = run_experiment(dataset, exp_data.name(), config, exp_workers);
        if (exp_out.empty()) {
            write_result_csv(rows, std::cout);
        } else {
            std::ofstream file = open_output(exp_out);
            write_result_csv(rows, file);
        }
        return 0;
    }

    if (grid_cmd->parsed()) {
        ExperimentConfig config = grid_config.build();
        LoadedPopulation loaded = load_population(grid_pop);
        GridOptions options;
        options.resolution = grid_resolution;
        options.scheme = scheme_from_name(grid_scheme);
        options.theta_exploit = config.exploit_experience;
        options.seed = config.base_seed;
        if (grid_out.empty()) {
            export_grid(loaded.pop, options, std::cout);
        } else {
            std::ofstream file = open_output(grid_out);
            export_grid(loaded.pop, options, file);
        }
        return 0;
    }

    if (gen_cmd->parsed()) {
        Dataset dataset = generate_dataset(gen_name, gen_count, gen_seed);
        write_csv(dataset, gen_out);
        std::cerr << "wrote " << dataset.size() << " samples to " << gen_out << '\n';
        return 0;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fuzzyucs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    } catch (const fuzzyucs::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
