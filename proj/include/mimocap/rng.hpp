#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mimocap/common.hpp"

namespace mimocap {

/// SplitMix64 finalizer. Used both as a stand-alone mixer and to derive
/// independent per-trial seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based per-trial seed: trial i of a run keyed by `master` gets
/// splitmix64(master + (i+1)*golden). Any trial is reproducible in
/// isolation and results do not depend on execution order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i) {
    return splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic random stream: mt19937_64 plus explicit Box-Muller so the
/// normal variate sequence does not depend on the standard library's
/// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal N(0, 1).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller; u1 is kept away from 0 so log() is finite.
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// Circularly-symmetric complex normal with E|z|^2 = 1
    /// (real and imaginary parts each N(0, 1/2)).
    Complex complex_normal() {
        const double s = 0.70710678118654752440;
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    /// Length-n vector of unit-variance complex normals.
    CVector complex_normal_vector(int n) {
        CVector v(n);
        for (int i = 0; i < n; ++i) v(i) = complex_normal();
        return v;
    }

    /// rows x cols matrix of unit-variance complex normals, column-major fill.
    CMatrix complex_normal_matrix(int rows, int cols) {
        CMatrix a(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) a(i, j) = complex_normal();
        return a;
    }

    /// Poisson draw by sequential inversion; one uniform per call.
    /// Fine for means up to a few hundred, which covers every use here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double u = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        int k = 0;
        while (u >= cdf && k < 100000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mimocap
