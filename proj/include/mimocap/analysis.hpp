#pragma once

#include "mimocap/common.hpp"
#include "mimocap/geometry.hpp"

namespace mimocap {

/// Solution of the large-system fixed point for the eta transform of the
/// interference Gram-matrix eigenvalues.
struct EtaSolution {
    double gamma = 0.0;
    double eta = 1.0;        // in (0, 1]
    double eta_prime = 0.0;  // d eta / d gamma, <= 0
    int K = 0;
    double residual = 0.0;   // fixed-point residual magnitude
};

/// Eta transform of the scaled interference power m*p: E[1/(1 + gamma*m*p)].
/// Closed form for theta = 4, adaptive quadrature otherwise.
double eta_mp(double gamma, const Scenario& scen);

/// Quadrature evaluation of the same expectation for any theta; the
/// independent cross-check of the closed form.
double eta_mp_quadrature(double gamma, const Scenario& scen);

/// d/dx of eta_mp at x >= 0.
double eta_mp_derivative(double x, const Scenario& scen);

/// Solves 1 - eta = (K/m) * (1 - eta_mp(gamma*eta)) for eta in (0, 1] by
/// bisection (residual <= 1e-10); eta_prime comes from implicit
/// differentiation of the fixed-point relation.
EtaSolution solve_eta(double gamma, int K, const Scenario& scen);

struct SinrMoments {
    int K = 0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Large-system mean of the post-detection SINR with K interferers:
/// a0p0 * E(lambda^2) * eta(1).
double sinr_mean(int K, const Scenario& scen);

/// Large-system variance: a0p0^2 * (E(lambda^4) - E(lambda^2)^2) *
/// (eta(1) + eta'(1)). Throws approximation_breakdown if the eta factor
/// is not positive.
double sinr_variance(int K, const Scenario& scen);

SinrMoments sinr_moments(int K, const Scenario& scen);

/// Two-moment Gamma approximation of the SINR density.
struct GammaFit {
    double a = 1.0;  // shape
    double b = 1.0;  // scale
};

/// a = mean^2/variance, b = variance/mean.
GammaFit gamma_fit(double mean, double variance);

/// Regularized lower incomplete gamma P(a, x/b).
double gamma_cdf(double x, const GammaFit& fit);

/// P(SINR < threshold) under the K-conditioned Gamma fit.
double outage_probability(int K, const Scenario& scen);

namespace testing {
/// Adds a bias to eta_mp; negative-control hook for the validation
/// command. Zero restores normal behavior.
void set_eta_mp_perturbation(double delta);
}  // namespace testing

}  // namespace mimocap
