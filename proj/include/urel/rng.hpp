#pragma once

#include <cstdint>
#include <random>

#include "urel/matrix.hpp"

namespace urel {

/// splitmix64 finalizer on seed + (index+1)*golden. Derives independent
/// per-trial engine seeds so campaigns parallelize deterministically.
inline uint64_t split_stream(uint64_t seed, uint64_t index) {
    uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seeded random source built on std::mt19937_64. The engine sequence is
/// pinned by the standard; the uniform/normal transforms are spelled out
/// here instead of using std::*_distribution, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static Rng stream(uint64_t seed, uint64_t index) { return Rng(split_stream(seed, index)); }

    uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (haveSpare_) {
            haveSpare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        haveSpare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    int uniform_int(int n) {
        const uint64_t un = static_cast<uint64_t>(n);
        const uint64_t threshold = (UINT64_MAX / un) * un;
        uint64_t x = next_u64();
        while (x >= threshold) x = next_u64();
        return static_cast<int>(x % un);
    }

private:
    std::mt19937_64 eng_;
    bool haveSpare_ = false;
    double spare_ = 0.0;
};

/// Matrix with independent standard complex Gaussian entries.
inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

}  // namespace urel
