#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fuzzyucs/data.hpp"
#include "fuzzyucs/errors.hpp"

using namespace fuzzyucs;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/fuzzyucs_test_" + name;
    std::ofstream file(path);
    file << content;
    return path;
}

RawCell num(double v) {
    RawCell c;
    c.kind = RawCell::Kind::Number;
    c.number = v;
    return c;
}

RawCell txt(std::string s) {
    RawCell c;
    c.kind = RawCell::Kind::Text;
    c.text = std::move(s);
    return c;
}

RawCell gap() { return RawCell{}; }

} // namespace

TEST_CASE("csv parsing: tokens, missing markers, layout errors") {
    std::string path = write_temp("basic.csv",
                                  "a,b,class\n"
                                  "1.5, 2 ,yes\n"
                                  "?,,no\n"
                                  "0.25,text,yes\n");
    RawTable table = load_csv(path);
    CHECK(table.column_names == std::vector<std::string>{"a", "b", "class"});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0][0].kind == RawCell::Kind::Number);
    CHECK(table.rows[0][0].number == doctest::Approx(1.5));
    CHECK(table.rows[0][1].number == doctest::Approx(2.0)); // whitespace trimmed
    CHECK(table.rows[1][0].kind == RawCell::Kind::Missing); // "?"
    CHECK(table.rows[1][1].kind == RawCell::Kind::Missing); // empty cell
    CHECK(table.rows[2][1].kind == RawCell::Kind::Text);
    CHECK(table.rows[2][1].text == "text");
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_csv("/tmp/fuzzyucs_no_such_file.csv"), DataError);

    path = write_temp("ragged.csv", "a,b,class\n1,2,x\n1,2\n");
    CHECK_THROWS_AS(load_csv(path), DataError);
    std::remove(path.c_str());

    path = write_temp("narrow.csv", "class\nx\n");
    CHECK_THROWS_AS(load_csv(path), DataError);
    std::remove(path.c_str());
}

TEST_CASE("encoding: min-max, constants, missing, categoricals") {
    RawTable table;
    table.column_names = {"n", "k", "m", "class"};
    table.rows = {{num(2), num(5), num(1), txt("red")},
                  {num(4), num(5), gap(), txt("blue")},
                  {num(6), num(5), num(3), txt("red")}};
    Dataset ds = encode_and_normalize(table);

    CHECK(ds.n_features == 3);
    CHECK(ds.size() == 3);
    CHECK(ds.row(0)[0] == doctest::Approx(0.0));
    CHECK(ds.row(1)[0] == doctest::Approx(0.5));
    CHECK(ds.row(2)[0] == doctest::Approx(1.0));

    CHECK(ds.row(0)[1] == doctest::Approx(0.0)); // constant column collapses
    CHECK(ds.row(2)[1] == doctest::Approx(0.0));

    CHECK(ds.row(0)[2] == doctest::Approx(0.0));
    CHECK(is_missing(ds.row(1)[2]));
    CHECK(ds.row(2)[2] == doctest::Approx(1.0));

    CHECK(ds.class_names == std::vector<std::string>{"red", "blue"}); // first appearance
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
}

TEST_CASE("a single text cell turns the whole column categorical") {
    RawTable table;
    table.column_names = {"v", "class"};
    table.rows = {{num(10), txt("a")},
                  {txt("low"), txt("b")},
                  {num(30), txt("a")}};
    Dataset ds = encode_and_normalize(table);
    // ordinals by first appearance: "10"->0, "low"->1, "30"->2, then min-max
    CHECK(ds.row(0)[0] == doctest::Approx(0.0));
    CHECK(ds.row(1)[0] == doctest::Approx(0.5));
    CHECK(ds.row(2)[0] == doctest::Approx(1.0));
}

TEST_CASE("encoding rejects degenerate tables") {
    RawTable all_missing;
    all_missing.column_names = {"v", "class"};
    all_missing.rows = {{gap(), txt("a")}, {gap(), txt("b")}};
    CHECK_THROWS_AS(encode_and_normalize(all_missing), DataError);

    RawTable missing_label;
    missing_label.column_names = {"v", "class"};
    missing_label.rows = {{num(1), txt("a")}, {num(2), gap()}};
    CHECK_THROWS_AS(encode_and_normalize(missing_label), DataError);

    RawTable one_class;
    one_class.column_names = {"v", "class"};
    one_class.rows = {{num(1), txt("a")}, {num(2), txt("a")}};
    CHECK_THROWS_AS(encode_and_normalize(one_class), DataError);
}

TEST_CASE("shuffle split: sizes, determinism, disjoint content") {
    Dataset ds = gen_rmaj(100, 9);
    auto [train_a, test_a] = shuffle_split(ds, {0.9, 42});
    CHECK(train_a.size() == 90);
    CHECK(test_a.size() == 10);
    CHECK(train_a.n_features == ds.n_features);

    auto [train_b, test_b] = shuffle_split(ds, {0.9, 42});
    CHECK(train_a.features == train_b.features); // same seed, same split
    CHECK(train_a.labels == train_b.labels);

    auto [train_c, test_c] = shuffle_split(ds, {0.9, 43});
    CHECK(train_a.features != train_c.features); // different seed reshuffles

    // every source row lands exactly once across the two halves
    double source_sum = 0.0, split_sum = 0.0;
    for (double v : ds.features) source_sum += v;
    for (double v : train_a.features) split_sum += v;
    for (double v : test_a.features) split_sum += v;
    CHECK(split_sum == doctest::Approx(source_sum).epsilon(1e-9));
}

TEST_CASE("generators: labels recompute from the binarized features") {
    Dataset mux = gen_rmux(2000, 5);
    CHECK(mux.n_features == 11);
    for (std::size_t r = 0; r < mux.size(); ++r) {
        auto row = mux.row(r);
        int bits[11];
        for (int i = 0; i < 11; ++i) bits[i] = row[i] >= 0.5 ? 1 : 0;
        int address = bits[0] * 4 + bits[1] * 2 + bits[2];
        CHECK(mux.labels[r] == bits[3 + address]);
    }

    Dataset maj = gen_rmaj(2000, 5);
    CHECK(maj.n_features == 11);
    for (std::size_t r = 0; r < maj.size(); ++r) {
        auto row = maj.row(r);
        int ones = 0;
        for (int i = 0; i < 11; ++i) ones += row[i] >= 0.5 ? 1 : 0;
        CHECK(maj.labels[r] == (ones >= 6 ? 1 : 0));
    }

    Dataset car = gen_rcar(2000, 5);
    CHECK(car.n_features == 12);
    for (std::size_t r = 0; r < car.size(); ++r) {
        auto row = car.row(r);
        int a = 0, b = 0;
        for (int i = 0; i < 6; ++i) a = a * 2 + (row[i] >= 0.5 ? 1 : 0);
        for (int i = 6; i < 12; ++i) b = b * 2 + (row[i] >= 0.5 ? 1 : 0);
        CHECK(car.labels[r] == (a + b >= 64 ? 1 : 0));
    }
}

TEST_CASE("generators: class balance near the analytic rates") {
    auto positive_rate = [](const Dataset& ds) {
        double ones = 0.0;
        for (int label : ds.labels) ones += label;
        return ones / static_cast<double>(ds.size());
    };
    CHECK(positive_rate(gen_rmux(100000, 3)) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(positive_rate(gen_rmaj(100000, 3)) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(positive_rate(gen_rcar(100000, 3)) == doctest::Approx(0.4921875).epsilon(0.02));
}

TEST_CASE("generator dispatch and determinism") {
    Dataset a = generate_dataset("rmux", 50, 7);
    Dataset b = gen_rmux(50, 7);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);

    Dataset c = gen_rmux(50, 8);
    CHECK(a.features != c.features);

    CHECK_THROWS_AS(generate_dataset("nope", 10, 1), DataError);
    CHECK_THROWS_AS(generate_dataset("rmux", 0, 1), DataError);
}

TEST_CASE("csv round trip preserves values exactly") {
    Dataset ds = gen_rcar(25, 13);
    ds.features[5] = kMissingValue;
    std::string path = "/tmp/fuzzyucs_test_roundtrip.csv";
    write_csv(ds, path);

    RawTable table = load_csv(path);
    REQUIRE(table.rows.size() == ds.size());
    REQUIRE(table.column_names.size() == static_cast<std::size_t>(ds.n_features) + 1);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(ds.n_features); ++i) {
            double original = ds.row(r)[i];
            const RawCell& cell = table.rows[r][i];
            if (is_missing(original)) {
                CHECK(cell.kind == RawCell::Kind::Missing);
            } else {
                REQUIRE(cell.kind == RawCell::Kind::Number);
                CHECK(cell.number == original); // %.17g round trips doubles bitwise
            }
        }
        // class names "0"/"1" parse back as numbers equal to the label
        REQUIRE(table.rows[r].back().kind == RawCell::Kind::Number);
        CHECK(table.rows[r].back().number == static_cast<double>(ds.labels[r]));
    }
    std::remove(path.c_str());
}
