#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cbound::rng {

// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index));
}

// Independent engine for (seed, index). Stream i never depends on how many
// other streams were drawn, so parallel schedules reproduce sequential runs.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(derive_seed(seed, index));
}

// Uniform direction on S^{dim-1}: normalized standard Gaussian draw.
inline std::vector<double> unit_vector(std::mt19937_64& eng, int dim) {
    if (dim < 1) throw std::domain_error("unit_vector: dim must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (;;) {
        double norm2 = 0.0;
        for (auto& c : v) {
            c = gauss(eng);
            norm2 += c * c;
        }
        if (norm2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& c : v) c *= inv;
            return v;
        }
        // norm underflow: redraw from the same stream
    }
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
}

} // namespace cbound::rng
