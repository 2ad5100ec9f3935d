#include "mimocap/analysis.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mimocap/randmat.hpp"

namespace mimocap {

namespace {

double g_eta_perturbation = 0.0;

// eta_mp for theta = 4 reduces to an arctan difference in
// s = c0^2 sqrt(m a0p0 x) after substituting t = c^2 in the distance
// integral.
double eta_mp_closed(double x, const Scenario& scen) {
    if (x == 0.0) return 1.0;
    const double s = scen.c0 * scen.c0 * std::sqrt(scen.m * scen.signal_power() * x);
    const double span = scen.R * scen.R - scen.eps * scen.eps;
    return 1.0 - s / span *
                     (std::atan(s / (scen.eps * scen.eps)) - std::atan(s / (scen.R * scen.R)));
}

}  // namespace

namespace testing {
void set_eta_mp_perturbation(double delta) { g_eta_perturbation = delta; }
}  // namespace testing

double eta_mp_quadrature(double gamma, const Scenario& scen) {
    if (gamma < 0.0) throw invalid_parameter("eta_mp: gamma must be >= 0");
    if (gamma == 0.0) return 1.0;
    const double a0p0 = scen.signal_power();
    const double span = scen.R * scen.R - scen.eps * scen.eps;
    const auto integrand = [&](double c) {
        const double p = std::pow(scen.c0 / c, scen.theta) * a0p0;
        return (2.0 * c / span) / (1.0 + gamma * scen.m * p);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, scen.eps, scen.R, 14, 1e-12);
}

double eta_mp(double gamma, const Scenario& scen) {
    if (gamma < 0.0) throw invalid_parameter("eta_mp: gamma must be >= 0");
    const double v =
        scen.theta == 4.0 ? eta_mp_closed(gamma, scen) : eta_mp_quadrature(gamma, scen);
    return v + g_eta_perturbation;
}

double eta_mp_derivative(double x, const Scenario& scen) {
    if (x < 0.0) throw invalid_parameter("eta_mp_derivative: x must be >= 0");
    const double a0p0 = scen.signal_power();
    if (scen.theta == 4.0) {
        const double e2 = scen.eps * scen.eps;
        const double r2 = scen.R * scen.R;
        const double span = r2 - e2;
        if (x == 0.0) return -scen.m * a0p0 * std::pow(scen.c0, 4.0) / (e2 * r2);
        const double s = scen.c0 * scen.c0 * std::sqrt(scen.m * a0p0 * x);
        const double arcs = std::atan(s / e2) - std::atan(s / r2);
        const double darcs_ds = e2 / (e2 * e2 + s * s) - r2 / (r2 * r2 + s * s);
        const double deta_ds = -(arcs + s * darcs_ds) / span;
        return deta_ds * s / (2.0 * x);  // ds/dx = s/(2x)
    }
    const double span = scen.R * scen.R - scen.eps * scen.eps;
    const auto integrand = [&](double c) {
        const double p = scen.m * std::pow(scen.c0 / c, scen.theta) * a0p0;
        const double d = 1.0 + x * p;
        return (2.0 * c / span) * (-p / (d * d));
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, scen.eps, scen.R, 14, 1e-12);
}

EtaSolution solve_eta(double gamma, int K, const Scenario& scen) {
    if (gamma < 0.0) throw invalid_parameter("solve_eta: gamma must be >= 0");
    if (K < 0) throw invalid_parameter("solve_eta: K must be >= 0");
    EtaSolution sol;
    sol.gamma = gamma;
    sol.K = K;
    if (K == 0 || gamma == 0.0) return sol;  // eta = 1, eta' = 0

    const double ratio = static_cast<double>(K) / scen.m;
    const auto f = [&](double eta) { return eta - 1.0 + ratio * (1.0 - eta_mp(gamma * eta, scen)); };

    // f is strictly increasing on (0, 1], f(0+) = -1, f(1) >= 0.
    double lo = 1e-12, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    sol.eta = 0.5 * (lo + hi);
    sol.residual = std::abs(f(sol.eta));

    // Implicit differentiation of F(eta, gamma) = eta - 1 + (K/m)(1 - eta_mp(gamma eta)):
    // eta' = (K/m) eta_mp'(gamma eta) eta / (1 - (K/m) eta_mp'(gamma eta) gamma).
    const double d = eta_mp_derivative(gamma * sol.eta, scen);
    sol.eta_prime = ratio * d * sol.eta / (1.0 - ratio * d * gamma);
    return sol;
}

double sinr_mean(int K, const Scenario& scen) {
    const double e2 = lambda_moments(scen.m, 1);
    return scen.signal_power() * e2 * solve_eta(1.0, K, scen).eta;
}

double sinr_variance(int K, const Scenario& scen) {
    const double e2 = lambda_moments(scen.m, 1);
    const double e4 = lambda_moments(scen.m, 2);
    const EtaSolution sol = solve_eta(1.0, K, scen);
    const double factor = sol.eta + sol.eta_prime;
    if (!(factor > 0.0))
        throw approximation_breakdown("sinr_variance: eta(1) + eta'(1) is not positive");
    const double a0p0 = scen.signal_power();
    return a0p0 * a0p0 * (e4 - e2 * e2) * factor;
}

SinrMoments sinr_moments(int K, const Scenario& scen) {
    const double e2 = lambda_moments(scen.m, 1);
    const double e4 = lambda_moments(scen.m, 2);
    const EtaSolution sol = solve_eta(1.0, K, scen);
    const double factor = sol.eta + sol.eta_prime;
    if (!(factor > 0.0))
        throw approximation_breakdown("sinr_moments: eta(1) + eta'(1) is not positive");
    const double a0p0 = scen.signal_power();
    return {K, a0p0 * e2 * sol.eta, a0p0 * a0p0 * (e4 - e2 * e2) * factor};
}

GammaFit gamma_fit(double mean, double variance) {
    if (!(mean > 0.0) || !(variance > 0.0))
        throw invalid_parameter("gamma_fit: mean and variance must be positive");
    return {mean * mean / variance, variance / mean};
}

double gamma_cdf(double x, const GammaFit& fit) {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(fit.a, x / fit.b);
}

double outage_probability(int K, const Scenario& scen) {
    const SinrMoments mom = sinr_moments(K, scen);
    return gamma_cdf(scen.sinr_threshold(), gamma_fit(mom.mean, mom.variance));
}

}  // namespace mimocap
