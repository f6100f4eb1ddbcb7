#include "fuzzyucs/data.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "fuzzyucs/errors.hpp"
#include "fuzzyucs/rng.hpp"

namespace fuzzyucs {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

RawCell parse_cell(const std::string& raw) {
    RawCell cell;
    std::string token = trimmed(raw);
    if (token.empty() || token == "?") {
        cell.kind = RawCell::Kind::Missing;
        return cell;
    }
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (errno == 0 && end == token.c_str() + token.size() && std::isfinite(value)) {
        cell.kind = RawCell::Kind::Number;
        cell.number = value;
    } else {
        cell.kind = RawCell::Kind::Text;
        cell.text = token;
    }
    return cell;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

} // namespace

RawTable load_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);

    RawTable table;
    std::string line;
    if (!std::getline(file, line)) throw DataError(path + ": empty file");
    for (const std::string& name : split_line(line)) {
        std::string header = trimmed(name);
        if (header.empty()) throw DataError(path + ": empty column name in header");
        table.column_names.push_back(header);
    }
    if (table.column_names.size() < 2)
        throw DataError(path + ": need at least one feature column and the class column");

    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        std::vector<std::string> fields = split_line(line);
        if (fields.size() != table.column_names.size())
            throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.column_names.size()) + " fields, got " +
                            std::to_string(fields.size()));
        std::vector<RawCell> row;
        row.reserve(fields.size());
        for (const std::string& field : fields) row.push_back(parse_cell(field));
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw DataError(path + ": no data rows");
    return table;
}

Dataset encode_and_normalize(const RawTable& table) {
    if (table.rows.empty()) throw DataError("table has no rows");
    std::size_t columns = table.column_names.size();
    if (columns < 2) throw DataError("table needs a feature column and the class column");
    std::size_t n_features = columns - 1;
    std::size_t m = table.rows.size();

    Dataset ds;
    ds.n_features = static_cast<int>(n_features);
    ds.feature_names.assign(table.column_names.begin(), table.column_names.end() - 1);
    ds.features.assign(m * n_features, kMissingValue);
    ds.labels.resize(m);

    for (std::size_t c = 0; c < n_features; ++c) {
        bool categorical = false;
        for (std::size_t r = 0; r < m; ++r)
            if (table.rows[r][c].kind == RawCell::Kind::Text) { categorical = true; break; }

        // Raw numeric value per row (categorical levels by first appearance).
        std::vector<double> raw(m, kMissingValue);
        if (categorical) {
            std::unordered_map<std::string, double> levels;
            for (std::size_t r = 0; r < m; ++r) {
                const RawCell& cell = table.rows[r][c];
                if (cell.kind == RawCell::Kind::Missing) continue;
                std::string key = cell.kind == RawCell::Kind::Text
                                      ? cell.text
                                      : std::to_string(cell.number);
                raw[r] = levels.try_emplace(key, static_cast<double>(levels.size())).first->second;
            }
        } else {
            for (std::size_t r = 0; r < m; ++r)
                if (table.rows[r][c].kind == RawCell::Kind::Number)
                    raw[r] = table.rows[r][c].number;
        }

        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double v : raw)
            if (!is_missing(v)) { lo = std::min(lo, v); hi = std::max(hi, v); }
        if (!std::isfinite(lo))
            throw DataError("feature column '" + table.column_names[c] + "' has no usable values");

        double range = hi - lo;
        for (std::size_t r = 0; r < m; ++r) {
            if (is_missing(raw[r])) continue;
            ds.features[r * n_features + c] = range > 0.0 ? (raw[r] - lo) / range : 0.0;
        }
    }

    std::unordered_map<std::string, int> class_index;
    for (std::size_t r = 0; r < m; ++r) {
        const RawCell& cell = table.rows[r][columns - 1];
        if (cell.kind == RawCell::Kind::Missing)
            throw DataError("row " + std::to_string(r + 2) + ": missing class label");
        std::string key = cell.kind == RawCell::Kind::Text ? cell.text : std::to_string(cell.number);
        auto [it, inserted] = class_index.try_emplace(key, static_cast<int>(class_index.size()));
        if (inserted) {
            // Numeric labels keep their spelling from the file.
            if (cell.kind == RawCell::Kind::Text) ds.class_names.push_back(cell.text);
            else {
                std::ostringstream spelled;
                spelled << cell.number;
                ds.class_names.push_back(spelled.str());
            }
        }
        ds.labels[r] = it->second;
    }
    if (ds.class_names.size() < 2) throw DataError("dataset declares fewer than 2 classes");
    return ds;
}

std::pair<Dataset, Dataset> shuffle_split(const Dataset& dataset, const SplitSpec& spec) {
    if (dataset.size() < 2) throw DataError("need at least 2 rows to split");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw DataError("train fraction must lie strictly between 0 and 1");

    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng = make_stream(spec.seed, "split");
    rng.shuffle(order);

    std::size_t train_count = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(dataset.size())));

    auto take = [&](std::size_t begin, std::size_t end) {
        Dataset part;
        part.n_features = dataset.n_features;
        part.class_names = dataset.class_names;
        part.feature_names = dataset.feature_names;
        part.labels.reserve(end - begin);
        part.features.reserve((end - begin) * dataset.n_features);
        for (std::size_t i = begin; i < end; ++i) {
            std::span<const double> row = dataset.row(order[i]);
            part.features.insert(part.features.end(), row.begin(), row.end());
            part.labels.push_back(dataset.labels[order[i]]);
        }
        return part;
    };
    return {take(0, train_count), take(train_count, dataset.size())};
}

namespace {

Dataset make_generated(int count, std::uint64_t seed, int n_features,
                       const std::string& stream, int (*label_of)(const std::vector<int>&)) {
    if (count < 1) throw DataError("sample count must be positive");
    Dataset ds;
    ds.n_features = n_features;
    ds.class_names = {"0", "1"};
    for (int i = 1; i <= n_features; ++i) ds.feature_names.push_back("x" + std::to_string(i));
    ds.features.reserve(static_cast<std::size_t>(count) * n_features);
    ds.labels.reserve(count);

    Rng rng = make_stream(seed, stream);
    std::vector<int> bits(n_features);
    for (int s = 0; s < count; ++s) {
        for (int i = 0; i < n_features; ++i) {
            double x = rng.next_double();
            ds.features.push_back(x);
            bits[i] = x >= 0.5 ? 1 : 0;
        }
        ds.labels.push_back(label_of(bits));
    }
    return ds;
}

int rmux_label(const std::vector<int>& bits) {
    int address = (bits[0] << 2) | (bits[1] << 1) | bits[2];
    return bits[3 + address];
}

int rmaj_label(const std::vector<int>& bits) {
    int ones = 0;
    for (int b : bits) ones += b;
    return ones >= 6 ? 1 : 0;
}

int rcar_label(const std::vector<int>& bits) {
    int a = 0, b = 0;
    for (int i = 0; i < 6; ++i) a = (a << 1) | bits[i];
    for (int i = 6; i < 12; ++i) b = (b << 1) | bits[i];
    return a + b >= 64 ? 1 : 0;
}

} // namespace

Dataset gen_rmux(int count, std::uint64_t seed) {
    return make_generated(count, seed, 11, "gen/rmux", rmux_label);
}

Dataset gen_rmaj(int count, std::uint64_t seed) {
    return make_generated(count, seed, 11, "gen/rmaj", rmaj_label);
}

Dataset gen_rcar(int count, std::uint64_t seed) {
    return make_generated(count, seed, 12, "gen/rcar", rcar_label);
}

Dataset generate_dataset(const std::string& name, int count, std::uint64_t seed) {
    if (name == "rmux") return gen_rmux(count, seed);
    if (name == "rmaj") return gen_rmaj(count, seed);
    if (name == "rcar") return gen_rcar(count, seed);
    throw DataError("unknown generator '" + name + "' (expected rmux, rmaj, or rcar)");
}

void write_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    for (const std::string& name : dataset.feature_names) file << name << ',';
    file << "class\n";
    char buffer[64];
    for (std::size_t r = 0; r < dataset.size(); ++r) {
        std::span<const double> row = dataset.row(r);
        for (double v : row) {
            if (is_missing(v)) {
                file << "?,";
            } else {
                std::snprintf(buffer, sizeof buffer, "%.17g", v);
                file << buffer << ',';
            }
        }
        file << dataset.class_names[dataset.labels[r]] << '\n';
    }
    if (!file) throw DataError("failed writing " + path);
}

} // namespace fuzzyucs
