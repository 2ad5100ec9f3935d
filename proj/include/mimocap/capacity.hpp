#pragma once

#include <functional>
#include <vector>

#include "mimocap/common.hpp"
#include "mimocap/geometry.hpp"

namespace mimocap {

/// Per-link transmission rate q = log2(1 + 10^(sinr_th_db/10)) in bps/Hz.
double rate_from_threshold(double sinr_th_db);

/// Outage as a function of the interferer count; lets the capacity
/// pipeline run from either the analytic fit or Monte Carlo estimates.
using OutageFn = std::function<double(int)>;

/// Analytic-outage adapter for a scenario.
OutageFn analytic_outage(const Scenario& scen);

/// Network throughput with K+1 active links: (K+1) (1 - P_out(K)) q.
double conditional_capacity(int K, const Scenario& scen, const OutageFn& outage);
double conditional_capacity(int K, const Scenario& scen);

/// Poisson pmf values 0..N with mean k0, where N is the smallest count
/// whose cumulative mass reaches 1 - tail.
std::vector<double> poisson_weights(double k0, double tail = 1e-6);

/// Link-layer throughput capacity per unit area at active-link density
/// rho0: (1/(pi R^2)) sum_K C~(K+1) Pr(K+1 links), truncated so the
/// neglected Poisson mass is below 1e-6.
double network_capacity(double rho0, const Scenario& scen, const OutageFn& outage);
double network_capacity(double rho0, const Scenario& scen);

/// Capacity-versus-density curve with the located maximum.
struct CapacityCurve {
    std::vector<double> densities;
    std::vector<double> capacities;
    double rho_star = 0.0;
    double c_star = 0.0;
    bool boundary_optimum = false;  // maximum sits on the search boundary
    bool multiple_maxima = false;   // more than one grid-local maximum seen
};

/// Geometric density grid of n points on [lo, hi].
std::vector<double> density_grid(double lo, double hi, int n);

/// Coarse geometric scan (>= 40 points) plus golden-section refinement of
/// an arbitrary capacity function; relative density tolerance 1e-3.
CapacityCurve optimal_density(const std::function<double(double)>& capacity, double rho_min,
                              double rho_max, int grid_points = 48);

/// Scenario shorthand using the analytic outage pipeline.
CapacityCurve optimal_density(const Scenario& scen, double rho_min, double rho_max,
                              int grid_points = 48);

}  // namespace mimocap
