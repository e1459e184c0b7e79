#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace aeroamp::rng {

// splitmix64 step; used to derive well-separated engine seeds from a
// (seed, stream) pair so parallel substreams stay independent and results
// do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL;
    std::uint64_t b = splitmix64(s);
    return std::mt19937_64(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
}

// Bounded draw and floating-point helpers are hand-rolled: the standard
// distributions are implementation-defined, and identical output across
// platforms is part of the determinism contract.
inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
    return static_cast<std::size_t>(g() % n);
}

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Box-Muller without caching the spare draw, so each call consumes a fixed
// number of engine steps.
inline double normal(std::mt19937_64& g, double mean = 0.0, double sd = 1.0) {
    double u1 = 0.0;
    do {
        u1 = uniform01(g);
    } while (u1 <= 0.0);
    const double u2 = uniform01(g);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& g) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_index(g, i);
        std::swap(v[i - 1], v[j]);
    }
}

// First k elements of a shuffled copy of 0..n-1 (sampling without
// replacement in engine-deterministic order).
inline std::vector<std::size_t> sample_without_replacement(std::mt19937_64& g,
                                                           std::size_t n,
                                                           std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle(idx, g);
    idx.resize(k < n ? k : n);
    return idx;
}

}  // namespace aeroamp::rng
