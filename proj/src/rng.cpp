#include "fuzzyucs/rng.hpp"

namespace fuzzyucs {

namespace {

// splitmix64 finalizer, used to decorrelate seed material.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view stream_name) {
    return mix64(mix64(master_seed) ^ fnv1a(stream_name));
}

} // namespace fuzzyucs
