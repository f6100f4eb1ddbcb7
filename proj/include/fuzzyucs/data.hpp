#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyucs/linguistic.hpp"

namespace fuzzyucs {

// One parsed CSV cell: a number, a categorical string, or a missing marker
// ("?" or empty).
struct RawCell {
    enum class Kind { Number, Text, Missing };
    Kind kind = Kind::Missing;
    double number = 0.0;
    std::string text;
};

struct RawTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<RawCell>> rows;
};

// Reads a comma-separated file with a header row; the class column is last.
// Malformed files raise DataError with row/column positions.
RawTable load_csv(const std::string& path);

// Feature matrix normalized to [0, 1] (missing cells are NaN) plus encoded
// class labels.
struct Dataset {
    std::vector<double> features; // row-major, size() * n_features
    int n_features = 0;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;

    std::size_t size() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * static_cast<std::size_t>(n_features),
                static_cast<std::size_t>(n_features)};
    }
};

// Columns with any non-numeric, non-missing cell become categorical and are
// mapped to ordinals by first appearance; every feature is then min-max
// normalized over its non-missing values (constant columns collapse to 0).
// Class labels are likewise indexed by first appearance.
Dataset encode_and_normalize(const RawTable& table);

struct SplitSpec {
    double train_fraction = 0.9;
    std::uint64_t seed = 0;
};

// Seeded permutation split: first floor(train_fraction * size) rows train,
// the rest test.
std::pair<Dataset, Dataset> shuffle_split(const Dataset& dataset, const SplitSpec& spec);

// Benchmark generators. Features are uniform in [0, 1]; each value binarizes
// as x >= 0.5 for the hidden boolean concept. Same seed, same dataset.
Dataset gen_rmux(int count, std::uint64_t seed);  // 11 inputs: 3 address bits select one of 8 data bits
Dataset gen_rmaj(int count, std::uint64_t seed);  // 11 inputs: class 1 iff at least 6 bits are set
Dataset gen_rcar(int count, std::uint64_t seed);  // 12 inputs: carry of the 6-bit sum A + B

Dataset generate_dataset(const std::string& name, int count, std::uint64_t seed);

void write_csv(const Dataset& dataset, const std::string& path);

} // namespace fuzzyucs
