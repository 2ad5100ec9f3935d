#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mimocap/randmat.hpp"
#include "mimocap/rng.hpp"

using namespace mimocap;

TEST_CASE("sample_channel contract") {
    CHECK_THROWS_AS(sample_channel(0, 1), invalid_parameter);

    const CMatrix a = sample_channel(4, 7);
    const CMatrix b = sample_channel(4, 7);
    CHECK(a == b);
    CHECK(a.rows() == 4);
    CHECK(a.cols() == 4);
    CHECK(sample_channel(4, 8) != a);
}

TEST_CASE("sample_channel trace moment matches m^2") {
    // E Tr(HH*) = m^2; Var(Tr) = m^2 for unit-variance complex entries.
    const int n = 100000, m = 2;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sample_channel(m, trial_seed(1001, i)).squaredNorm();
    const double se = std::sqrt(static_cast<double>(m * m) / n);
    CHECK(std::abs(s / n - m * m) < 3.0 * se);
}

TEST_CASE("dominant_mode on identity and rank-one matrices") {
    const DominantMode id = dominant_mode(CMatrix::Identity(3, 3));
    CHECK(id.lambda1 == doctest::Approx(1.0));

    Rng rng(5);
    CVector u = rng.complex_normal_vector(4);
    u /= u.norm();
    CVector v = rng.complex_normal_vector(4);
    v /= v.norm();
    const CMatrix h = 2.0 * u * v.adjoint();
    const DominantMode mode = dominant_mode(h);
    CHECK(mode.lambda1 == doctest::Approx(2.0).epsilon(1e-12));
    // Left vector matches up to the fixed global phase.
    CHECK(std::abs(mode.u.dot(u)) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(dominant_mode(CMatrix::Zero(2, 3)), invalid_parameter);
}

TEST_CASE("dominant_mode against an independent eigensolver") {
    for (int i = 0; i < 50; ++i) {
        const CMatrix h = sample_channel(4, trial_seed(2002, i));
        const DominantMode mode = dominant_mode(h);

        Eigen::SelfAdjointEigenSolver<CMatrix> es(h * h.adjoint());
        const double lmax = es.eigenvalues().maxCoeff();
        CHECK(mode.lambda1 * mode.lambda1 == doctest::Approx(lmax).epsilon(1e-10));
        CHECK((h * mode.v - mode.lambda1 * mode.u).norm() < 1e-8);
        CHECK(mode.u.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mode.v.norm() == doctest::Approx(1.0).epsilon(1e-12));

        // Phase convention: first nonzero entry of u is real-nonnegative.
        CHECK(mode.u(0).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(mode.u(0).real() >= 0.0);

        // Dominant eigenvalue is at least the average eigenvalue.
        CHECK(mode.lambda1 * mode.lambda1 >= h.squaredNorm() / h.rows() - 1e-12);
    }
}

TEST_CASE("exact lambda moments: known closed forms and regression values") {
    // m = 1: |h|^2 is Exponential(1). m = 2 moments are exactly 3.5 and 15.5.
    CHECK(lambda_moment_exact(1, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lambda_moment_exact(1, 2) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(lambda_moment_exact(2, 1) == doctest::Approx(3.5).epsilon(1e-9));
    CHECK(lambda_moment_exact(2, 2) == doctest::Approx(15.5).epsilon(1e-9));
    // Larger m frozen from an independent quadrature of the same CDF.
    CHECK(lambda_moment_exact(4, 1) == doctest::Approx(9.772283664838).epsilon(1e-8));
    CHECK(lambda_moment_exact(4, 2) == doctest::Approx(103.136747923364).epsilon(1e-8));
    CHECK(lambda_moment_exact(6, 1) == doctest::Approx(16.625319196841).epsilon(1e-8));
    CHECK(lambda_moment_exact(6, 2) == doctest::Approx(287.927140621524).epsilon(1e-8));
}

TEST_CASE("wishart largest-eigenvalue cdf basics") {
    CHECK(wishart_lmax_cdf(0.0, 3) == 0.0);
    CHECK(wishart_lmax_cdf(1.0, 1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    double prev = 0.0;
    for (double x = 0.5; x < 40.0; x += 0.5) {
        const double f = wishart_lmax_cdf(x, 4);
        CHECK(f >= prev - 1e-12);
        prev = f;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monte carlo lambda moments agree with the exact backend") {
    const std::int64_t n = 200000;
    for (int m : {1, 2, 4}) {
        const double exact1 = lambda_moment_exact(m, 1);
        const double exact2 = lambda_moment_exact(m, 2);
        const double mc1 = lambda_moments(m, 1, n, 42);
        const double mc2 = lambda_moments(m, 2, n, 42);
        // Standard error bounded through the fourth moment.
        const double se1 = std::sqrt((exact2 - exact1 * exact1) / n);
        CHECK(std::abs(mc1 - exact1) < 4.0 * se1);
        CHECK(std::abs(mc2 - exact2) / exact2 < 0.01);
    }
}

TEST_CASE("moment summaries satisfy the range and Jensen invariants") {
    for (int m = 1; m <= 6; ++m) {
        const LambdaMoments mc = lambda_moments_summary(m, MomentBackend::MonteCarlo, 20000, 77);
        CHECK(mc.moment2 >= mc.moment1 * mc.moment1);
        CHECK(mc.moment1 <= static_cast<double>(m * m) * 1.01);
        CHECK(mc.samples == 20000);
        CHECK(mc.method == MomentBackend::MonteCarlo);

        const LambdaMoments exact = lambda_moments_summary(m, MomentBackend::Exact);
        CHECK(exact.moment2 >= exact.moment1 * exact.moment1 * (1.0 - 1e-12));
        CHECK(exact.moment1 >= 1.0 - 1e-9);
        CHECK(exact.moment1 <= static_cast<double>(m * m));
        CHECK(exact.samples == 0);
    }
}

TEST_CASE("default-backend moments are frozen regression constants") {
    // 1e6 samples at the default seed; deterministic, hence exact.
    CHECK(lambda_moments(2, 1) == 3.5013089371489214);
    CHECK(lambda_moments(2, 2) == 15.512212464951947);
}

TEST_CASE("lambda_moments determinism, errors, and monotonicity in m") {
    CHECK(lambda_moments(2, 1, 5000, 9) == lambda_moments(2, 1, 5000, 9));
    CHECK_THROWS_AS(lambda_moments(2, 3, 5000, 9), unsupported_moment);
    CHECK_THROWS_AS(lambda_moments(0, 1, 5000, 9), invalid_parameter);
    CHECK_THROWS_AS(lambda_moments(2, 1, 0, 9), invalid_parameter);

    for (int tau : {1, 2}) {
        double prev = 0.0;
        for (int m = 1; m <= 6; ++m) {
            const double v = lambda_moments(m, tau, 20000, 77);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("moment cache file round trip") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "mimocap_moment_cache_test.txt";
    fs::remove(path);

    auto& cache = MomentCache::instance();
    cache.set_path(path);
    const double v = lambda_moments(3, 1, 5000, 123);

    // One record per line: m,tau,samples,seed,value.
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    bool found = false;
    while (std::getline(in, line)) found = found || line.rfind("3,1,5000,123,", 0) == 0;
    CHECK(found);

    cache.clear();
    CHECK(!cache.lookup({3, 1, 5000, 123}).has_value());
    cache.set_path(path);  // reload from disk
    auto hit = cache.lookup({3, 1, 5000, 123});
    REQUIRE(hit.has_value());
    CHECK(*hit == v);

    cache.set_path("");
    fs::remove(path);
}

TEST_CASE("sphere entry moments: closed forms and edge case") {
    const SphereEntryMoments m2 = sphere_entry_moments(2);
    CHECK(m2.e2 == doctest::Approx(0.5));
    CHECK(m2.e4 == doctest::Approx(1.0 / 3.0));
    CHECK(m2.cross == doctest::Approx(1.0 / 6.0));

    const SphereEntryMoments m4 = sphere_entry_moments(4);
    CHECK(m4.e2 == doctest::Approx(0.25));
    CHECK(m4.e4 == doctest::Approx(0.1));
    CHECK(m4.cross == doctest::Approx(0.05));

    const SphereEntryMoments m1 = sphere_entry_moments(1);
    CHECK(m1.e2 == doctest::Approx(1.0));
    CHECK(m1.cross == 0.0);
    CHECK_THROWS_AS(sphere_entry_moments(0), invalid_parameter);
}

TEST_CASE("sphere entry moments match sampled normalized vectors") {
    const int n = 200000, m = 4;
    const SphereEntryMoments exact = sphere_entry_moments(m);
    double s2 = 0, s4 = 0, sx = 0, q2 = 0, q4 = 0, qx = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(trial_seed(3003, i));
        CVector v = rng.complex_normal_vector(m);
        v /= v.norm();
        const double a = std::norm(v(0));
        const double b = std::norm(v(1));
        s2 += a;
        q2 += a * a;
        s4 += a * a;
        q4 += a * a * a * a;
        sx += a * b;
        qx += a * b * a * b;
    }
    const auto within3se = [n](double sum, double sumsq, double target) {
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        return std::abs(mean - target) <= 3.0 * std::sqrt(var / n);
    };
    CHECK(within3se(s2, q2, exact.e2));
    CHECK(within3se(s4, q4, exact.e4));
    CHECK(within3se(sx, qx, exact.cross));
}

TEST_CASE("singular vector entries follow the beta density") {
    // |u_i|^2 of a Haar unit vector has CDF 1 - (1-x)^(m-1); KS test at
    // significance 0.01 (critical value 1.628/sqrt(n)).
    const int n = 100000, m = 4;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        const DominantMode mode = dominant_mode(sample_channel(m, trial_seed(4004, i)));
        xs[i] = std::norm(mode.u(m - 1));
    }
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = 1.0 - std::pow(1.0 - xs[i], m - 1);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("distinct singular vector entries are uncorrelated") {
    const int n = 20000, m = 4;
    Complex sum = 0.0;
    double sumsq_re = 0, sumsq_im = 0;
    for (int i = 0; i < n; ++i) {
        const DominantMode mode = dominant_mode(sample_channel(m, trial_seed(5005, i)));
        const Complex p = std::conj(mode.u(1)) * mode.u(2);
        sum += p;
        sumsq_re += p.real() * p.real();
        sumsq_im += p.imag() * p.imag();
    }
    const Complex mean = sum / static_cast<double>(n);
    CHECK(std::abs(mean.real()) <= 3.0 * std::sqrt(sumsq_re / n / n));
    CHECK(std::abs(mean.imag()) <= 3.0 * std::sqrt(sumsq_im / n / n));
}
