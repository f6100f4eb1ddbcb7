#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fuzzyucs {

// Deterministic random source. Wraps std::mt19937_64 but performs all
// conversions (uniform doubles, bounded ints, shuffles) by hand, because the
// standard distributions and std::shuffle are implementation-defined and
// would break bit-identical replay across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, upper). upper must be positive.
    int next_int(int upper) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(upper)); }

    std::size_t next_index(std::size_t upper) { return static_cast<std::size_t>(engine_() % static_cast<std::uint64_t>(upper)); }

    bool bernoulli(double p) { return next_double() < p; }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        if (values.size() < 2) return;
        for (std::size_t i = values.size() - 1; i > 0; --i) {
            std::size_t j = next_index(i + 1);
            std::swap(values[i], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Derives independently seeded named streams from one master seed, so that
// consumers of one stream (say GA draws) cannot perturb another (say the
// epoch shuffle) no matter how many values they pull.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view stream_name);

inline Rng make_stream(std::uint64_t master_seed, std::string_view stream_name) {
    return Rng(derive_stream_seed(master_seed, stream_name));
}

} // namespace fuzzyucs
