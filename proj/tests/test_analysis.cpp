#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mimocap/analysis.hpp"
#include "mimocap/randmat.hpp"

using namespace mimocap;

namespace {
const Scenario kRef;
}

TEST_CASE("eta transform of the interference power: closed form") {
    CHECK(eta_mp(0.0, kRef) == 1.0);
    CHECK_THROWS_AS(eta_mp(-1.0, kRef), invalid_parameter);

    // Frozen value at gamma = 1 for the reference scenario.
    CHECK(eta_mp(1.0, kRef) == doctest::Approx(0.060391710401).epsilon(1e-9));

    // Closed form against adaptive quadrature across ten decades.
    for (int i = 0; i < 50; ++i) {
        const double gamma = 1e-6 * std::pow(10.0, 10.0 * i / 49.0);
        CHECK(std::abs(eta_mp(gamma, kRef) - eta_mp_quadrature(gamma, kRef)) <= 1e-8);
    }

    // Monotone decreasing toward zero.
    double prev = 1.0;
    for (double g : {1e-4, 1e-2, 1.0, 1e2, 1e4, 1e8}) {
        const double v = eta_mp(g, kRef);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK(eta_mp(1e8, kRef) < 0.01);
}

TEST_CASE("general path-loss exponent falls back to quadrature") {
    Scenario s = kRef;
    s.theta = 3.0;
    CHECK(eta_mp(0.5, s) == eta_mp_quadrature(0.5, s));
    CHECK(eta_mp(0.5, s) > 0.0);
    CHECK(eta_mp(0.5, s) < 1.0);
}

TEST_CASE("eta_mp derivative matches finite differences") {
    for (double x : {1e-4, 1e-2, 0.5, 1.0, 10.0}) {
        const double h = 1e-5 * x;
        const double fd = (eta_mp(x + h, kRef) - eta_mp(x - h, kRef)) / (2.0 * h);
        CHECK(eta_mp_derivative(x, kRef) == doctest::Approx(fd).epsilon(1e-6));
    }
    Scenario s = kRef;
    s.theta = 3.0;
    const double h = 1e-6;
    const double fd = (eta_mp(0.1 + h, s) - eta_mp(0.1 - h, s)) / (2.0 * h);
    CHECK(eta_mp_derivative(0.1, s) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("eta fixed point: trivial case, frozen values, residual") {
    const EtaSolution none = solve_eta(1.0, 0, kRef);
    CHECK(none.eta == 1.0);
    CHECK(none.eta_prime == 0.0);

    const EtaSolution k2 = solve_eta(1.0, 2, kRef);
    CHECK(k2.eta == doctest::Approx(0.550597437664).epsilon(1e-9));
    CHECK(k2.eta_prime == doctest::Approx(-0.039021921432).epsilon(1e-8));
    CHECK(k2.residual <= 1e-10);

    const EtaSolution k20 = solve_eta(1.0, 20, kRef);
    CHECK(k20.eta == doctest::Approx(0.003954160891).epsilon(1e-9));
    CHECK(k20.eta_prime == doctest::Approx(-0.003919934508).epsilon(1e-8));
    CHECK(k20.eta + k20.eta_prime > 0.0);

    CHECK_THROWS_AS(solve_eta(1.0, -1, kRef), invalid_parameter);
    CHECK_THROWS_AS(solve_eta(-1.0, 2, kRef), invalid_parameter);
}

TEST_CASE("eta decreases in K and stays in (0, 1]") {
    double prev = 1.0 + 1e-12;
    for (int k = 0; k <= 50; ++k) {
        const EtaSolution sol = solve_eta(1.0, k, kRef);
        CHECK(sol.eta > 0.0);
        CHECK(sol.eta <= 1.0);
        CHECK(sol.eta < prev);
        CHECK(sol.eta_prime <= 0.0);
        prev = sol.eta;
    }
}

TEST_CASE("eta nonincreasing in gamma") {
    double prev = 1.1;
    for (double g : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double eta = solve_eta(g, 10, kRef).eta;
        CHECK(eta <= prev);
        prev = eta;
    }
}

TEST_CASE("implicit eta derivative against central differences") {
    // Step 1e-4 * gamma, agreement to 1e-4 relative, K = 1..50.
    for (int k = 1; k <= 50; ++k) {
        const double gamma = 1.0;
        const double h = 1e-4 * gamma;
        const EtaSolution sol = solve_eta(gamma, k, kRef);
        const double fd = (solve_eta(gamma + h, k, kRef).eta - solve_eta(gamma - h, k, kRef).eta) /
                          (2.0 * h);
        CHECK(sol.eta_prime == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("sinr mean: composition, reference value, monotonicity") {
    Scenario m1 = kRef;
    m1.m = 1;
    // K = 0: mean is a0p0 * E(lambda^2); at m = 1 that is 100 exactly in
    // expectation (Monte Carlo moment backend carries sampling noise).
    CHECK(sinr_mean(0, m1) == doctest::Approx(100.0).epsilon(0.01));
    CHECK(sinr_mean(0, m1) ==
          doctest::Approx(m1.signal_power() * lambda_moments(1, 1)).epsilon(1e-12));

    double prev = sinr_mean(0, kRef);
    for (int k = 1; k <= 50; ++k) {
        const double mean = sinr_mean(k, kRef);
        CHECK(mean < prev);
        CHECK(mean > 0.0);
        prev = mean;
    }
    CHECK(sinr_mean(0, kRef) <= kRef.signal_power() * lambda_moments(kRef.m, 1) * (1 + 1e-12));
}

TEST_CASE("sinr variance: composition, reference value, monotone sweep") {
    Scenario m1 = kRef;
    m1.m = 1;
    // K = 0 at m = 1: 1e4 * (E l^4 - (E l^2)^2) = 1e4 for Exponential(1).
    CHECK(sinr_variance(0, m1) == doctest::Approx(1e4).epsilon(0.03));

    const double e2 = lambda_moments(kRef.m, 1);
    const double e4 = lambda_moments(kRef.m, 2);
    CHECK(sinr_variance(0, kRef) ==
          doctest::Approx(1e4 * (e4 - e2 * e2)).epsilon(1e-12));

    // Decreasing in K across the reference sweep; never a breakdown.
    double prev = sinr_variance(0, kRef);
    for (int k = 1; k <= 50; ++k) {
        const double var = sinr_variance(k, kRef);
        CHECK(var > 0.0);
        CHECK(var < prev);
        prev = var;
    }

    const SinrMoments mom = sinr_moments(7, kRef);
    CHECK(mom.mean == doctest::Approx(sinr_mean(7, kRef)).epsilon(1e-14));
    CHECK(mom.variance == doctest::Approx(sinr_variance(7, kRef)).epsilon(1e-14));
}

TEST_CASE("gamma fit: arithmetic and reconstruction identities") {
    const GammaFit fit = gamma_fit(10.0, 25.0);
    CHECK(fit.a == doctest::Approx(4.0));
    CHECK(fit.b == doctest::Approx(2.5));

    for (double a : {0.5, 1.0, 4.0, 11.7}) {
        for (double b : {0.1, 2.5, 40.0}) {
            const GammaFit f = gamma_fit(a * b, a * b * b);
            CHECK(f.a * f.b == doctest::Approx(a * b).epsilon(1e-12));
            CHECK(f.a * f.b * f.b == doctest::Approx(a * b * b).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(gamma_fit(0.0, 1.0), invalid_parameter);
    CHECK_THROWS_AS(gamma_fit(1.0, -1.0), invalid_parameter);
}

TEST_CASE("gamma cdf: exponential special case, quadrature oracle, shape") {
    CHECK(gamma_cdf(0.0, {4.0, 2.5}) == 0.0);
    CHECK(gamma_cdf(-1.0, {4.0, 2.5}) == 0.0);

    for (double x : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(gamma_cdf(x, {1.0, 2.0}) ==
              doctest::Approx(1.0 - std::exp(-x / 2.0)).epsilon(1e-12));
    }

    // Independent quadrature of the density for a = 4, b = 2.5 at x = 10.
    const GammaFit fit{4.0, 2.5};
    const auto density = [&](double t) {
        return std::pow(t, fit.a - 1.0) * std::exp(-t / fit.b) /
               (std::pow(fit.b, fit.a) * std::tgamma(fit.a));
    };
    const double quad =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, 10.0, 12, 1e-12);
    CHECK(gamma_cdf(10.0, fit) == doctest::Approx(quad).epsilon(1e-10));
    CHECK(gamma_cdf(10.0, fit) == doctest::Approx(0.566529879633291).epsilon(1e-12));

    double prev = -1.0;
    for (double x = 0.0; x < 50.0; x += 0.5) {
        const double f = gamma_cdf(x, fit);
        CHECK(f >= prev);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        prev = f;
    }
}

TEST_CASE("outage probability: limits and monotonicity") {
    Scenario s = kRef;
    s.sinr_th_db = -300.0;
    CHECK(outage_probability(5, s) == doctest::Approx(0.0).epsilon(1e-30));

    CHECK(outage_probability(0, kRef) < 1e-10);

    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
        const double p = outage_probability(k, kRef);
        CHECK(p >= prev);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("eta perturbation hook shifts the transform and restores") {
    const double clean = eta_mp(1.0, kRef);
    mimocap::testing::set_eta_mp_perturbation(-0.02);
    CHECK(eta_mp(1.0, kRef) == doctest::Approx(clean - 0.02).epsilon(1e-12));
    CHECK(std::abs(eta_mp(1.0, kRef) - eta_mp_quadrature(1.0, kRef)) > 1e-8);
    mimocap::testing::set_eta_mp_perturbation(0.0);
    CHECK(eta_mp(1.0, kRef) == clean);
}
