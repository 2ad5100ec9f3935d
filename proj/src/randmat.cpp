#include "mimocap/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mimocap/rng.hpp"

namespace mimocap {

CMatrix sample_channel(int m, std::uint64_t seed) {
    if (m < 1) throw invalid_parameter("sample_channel: m must be >= 1");
    Rng rng(seed);
    return rng.complex_normal_matrix(m, m);
}

DominantMode dominant_mode(const CMatrix& h) {
    if (h.rows() != h.cols() || h.rows() < 1)
        throw invalid_parameter("dominant_mode: matrix must be square and nonempty");
    if (!h.allFinite()) throw invalid_parameter("dominant_mode: entries must be finite");

    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    DominantMode mode;
    mode.lambda1 = svd.singularValues()(0);
    mode.u = svd.matrixU().col(0);
    mode.v = svd.matrixV().col(0);

    // Fix the global phase: first nonzero entry of u becomes real-nonnegative.
    for (Eigen::Index i = 0; i < mode.u.size(); ++i) {
        const double a = std::abs(mode.u(i));
        if (a > 0.0) {
            const Complex phase = std::conj(mode.u(i)) / a;
            mode.u *= phase;
            mode.v *= phase;
            break;
        }
    }
    return mode;
}

SphereEntryMoments sphere_entry_moments(int m) {
    if (m < 1) throw invalid_parameter("sphere_entry_moments: m must be >= 1");
    const double dm = static_cast<double>(m);
    SphereEntryMoments s;
    s.e2 = 1.0 / dm;
    s.e4 = 2.0 / (dm * (dm + 1.0));
    s.cross = m >= 2 ? 1.0 / (dm * (dm + 1.0)) : 0.0;
    return s;
}

// ---------------------------------------------------------------------------
// Moment cache
// ---------------------------------------------------------------------------

MomentCache& MomentCache::instance() {
    static MomentCache cache;
    return cache;
}

void MomentCache::set_path(const std::filesystem::path& path) {
    std::lock_guard lock(mu_);
    path_ = path;
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        Key k{};
        double value = 0.0;
        char c1, c2, c3, c4;
        if (ss >> k.m >> c1 >> k.tau >> c2 >> k.samples >> c3 >> k.seed >> c4 >> value &&
            c1 == ',' && c2 == ',' && c3 == ',' && c4 == ',') {
            entries_[k] = value;
        }
    }
}

std::optional<double> MomentCache::lookup(const Key& key) const {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return std::nullopt;
}

void MomentCache::store(const Key& key, double value) {
    std::lock_guard lock(mu_);
    const bool fresh = entries_.emplace(key, value).second;
    if (!fresh || path_.empty()) return;
    // Rewrite the whole file; it holds a handful of records at most.
    std::ofstream out(path_, std::ios::trunc);
    out.precision(17);
    for (const auto& [k, v] : entries_)
        out << k.m << ',' << k.tau << ',' << k.samples << ',' << k.seed << ',' << v << '\n';
}

void MomentCache::clear() {
    std::lock_guard lock(mu_);
    entries_.clear();
}

// ---------------------------------------------------------------------------
// lambda_max^2 moments
// ---------------------------------------------------------------------------

namespace {

// Largest squared singular value via the m x m Gram matrix; cheaper than a
// full SVD when singular vectors are not needed.
double lmax2_of(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h * h.adjoint(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

}  // namespace

double lambda_moments(int m, int tau, std::int64_t samples, std::uint64_t seed, Execution exec) {
    if (m < 1) throw invalid_parameter("lambda_moments: m must be >= 1");
    if (tau != 1 && tau != 2) throw unsupported_moment("lambda_moments: tau must be 1 or 2");
    if (samples < 1) throw invalid_parameter("lambda_moments: samples must be >= 1");

    auto& cache = MomentCache::instance();
    const MomentCache::Key key{m, tau, samples, seed};
    if (auto hit = cache.lookup(key)) return *hit;

    // One pass computes both tau = 1 and tau = 2; per-sample seeds make the
    // result independent of scheduling.
    std::vector<double> v1(samples), v2(samples);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (std::int64_t i = 0; i < samples; ++i) {
        Rng rng(trial_seed(seed, static_cast<std::uint64_t>(i)));
        const double l2 = lmax2_of(rng.complex_normal_matrix(m, m));
        v1[i] = l2;
        v2[i] = l2 * l2;
    }
    double s1 = 0.0, s2 = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        s1 += v1[i];
        s2 += v2[i];
    }
    const double m1 = s1 / static_cast<double>(samples);
    const double m2 = s2 / static_cast<double>(samples);
    cache.store({m, 1, samples, seed}, m1);
    cache.store({m, 2, samples, seed}, m2);
    return tau == 1 ? m1 : m2;
}

LambdaMoments lambda_moments_summary(int m, MomentBackend backend, std::int64_t samples,
                                     std::uint64_t seed) {
    LambdaMoments out;
    out.m = m;
    out.method = backend;
    if (backend == MomentBackend::MonteCarlo) {
        out.moment1 = lambda_moments(m, 1, samples, seed);
        out.moment2 = lambda_moments(m, 2, samples, seed);
        out.samples = samples;
    } else {
        out.moment1 = lambda_moment_exact(m, 1);
        out.moment2 = lambda_moment_exact(m, 2);
    }
    // moment2 >= moment1^2 holds for any empirical distribution; the range
    // bounds get slack for sampling noise (Monte Carlo) or quadrature
    // error (exact).
    const double dm = static_cast<double>(m);
    const double slack = backend == MomentBackend::MonteCarlo ? 1e-2 : 1e-9;
    if (out.moment2 < out.moment1 * out.moment1 * (1.0 - 1e-12) ||
        out.moment1 < 1.0 - slack || out.moment1 > dm * dm * (1.0 + slack))
        throw numeric_failure("lambda_moments_summary: moment estimates violate invariants");
    return out;
}

double wishart_lmax_cdf(double x, int m) {
    if (m < 1) throw invalid_parameter("wishart_lmax_cdf: m must be >= 1");
    if (x <= 0.0) return 0.0;
    // P(lmax <= x) = det[ gamma_lower(i+j-1, x) ]_{i,j=1..m} / prod_k ((k-1)!)^2
    Eigen::MatrixXd psi(m, m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            const double a = static_cast<double>(i + j - 1);
            psi(i - 1, j - 1) = boost::math::gamma_p(a, x) * boost::math::tgamma(a);
        }
    double norm = 1.0;
    for (int k = 1; k <= m; ++k) {
        const double g = boost::math::tgamma(static_cast<double>(k));
        norm *= g * g;
    }
    const double f = psi.determinant() / norm;
    return std::clamp(f, 0.0, 1.0);
}

double lambda_moment_exact(int m, int tau) {
    if (m < 1) throw invalid_parameter("lambda_moment_exact: m must be >= 1");
    if (tau != 1 && tau != 2) throw unsupported_moment("lambda_moment_exact: tau must be 1 or 2");
    // E[(lmax)^tau] = int_0^inf tau x^(tau-1) (1 - F(x)) dx; the survival
    // function decays like exp(-x) so a moderate upper limit suffices.
    double hi = 40.0 + 12.0 * m;
    while (1.0 - wishart_lmax_cdf(hi, m) > 1e-16) hi *= 1.5;
    const auto integrand = [m, tau](double x) {
        const double surv = 1.0 - wishart_lmax_cdf(x, m);
        return tau == 1 ? surv : 2.0 * x * surv;
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, hi, 12, 1e-12);
}

}  // namespace mimocap
