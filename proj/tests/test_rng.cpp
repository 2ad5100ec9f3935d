#include <doctest.h>

#include <cmath>
#include <vector>

#include "mimocap/rng.hpp"

using namespace mimocap;

TEST_CASE("splitmix64 is a fixed function") {
    // Reference values of the standard SplitMix64 finalizer.
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
    CHECK(splitmix64(splitmix64(0)) != splitmix64(0));
}

TEST_CASE("trial seeds differ across trials and masters") {
    CHECK(trial_seed(42, 0) != trial_seed(42, 1));
    CHECK(trial_seed(42, 0) != trial_seed(43, 0));
    CHECK(trial_seed(42, 7) == trial_seed(42, 7));
}

TEST_CASE("identical seeds give identical streams") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("normal moments") {
    Rng rng(7);
    const int n = 200000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s1 += x;
        s2 += x * x;
    }
    CHECK(std::abs(s1 / n) < 3.0 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("complex normal is unit variance") {
    Rng rng(9);
    const int n = 100000;
    double p = 0;
    for (int i = 0; i < n; ++i) p += std::norm(rng.complex_normal());
    CHECK(p / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson sampler mean and degenerate cases") {
    Rng rng(11);
    const double mean = 7.5;
    const int n = 100000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += rng.poisson(mean);
    CHECK(s / n == doctest::Approx(mean).epsilon(0.02));
    CHECK(Rng(1).poisson(0.0) == 0);
    CHECK(Rng(1).poisson(-1.0) == 0);
}
