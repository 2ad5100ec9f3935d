#include "mimocap/capacity.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "mimocap/analysis.hpp"

namespace mimocap {

double rate_from_threshold(double sinr_th_db) {
    return std::log2(1.0 + std::pow(10.0, sinr_th_db / 10.0));
}

OutageFn analytic_outage(const Scenario& scen) {
    // Memoized: the Poisson sum revisits the same K across densities.
    auto memo = std::make_shared<std::map<int, double>>();
    return [scen, memo](int k) {
        if (auto it = memo->find(k); it != memo->end()) return it->second;
        const double p = outage_probability(k, scen);
        (*memo)[k] = p;
        return p;
    };
}

double conditional_capacity(int K, const Scenario& scen, const OutageFn& outage) {
    if (K < 0) throw invalid_parameter("conditional_capacity: K must be >= 0");
    return (K + 1) * (1.0 - outage(K)) * rate_from_threshold(scen.sinr_th_db);
}

double conditional_capacity(int K, const Scenario& scen) {
    return conditional_capacity(K, scen, analytic_outage(scen));
}

std::vector<double> poisson_weights(double k0, double tail) {
    if (k0 < 0.0) throw invalid_parameter("poisson_weights: mean must be >= 0");
    std::vector<double> w;
    double p = std::exp(-k0);
    double mass = p;
    w.push_back(p);
    // Keep extending until the covered mass reaches 1 - tail; the bound
    // 64 + 16*k0 is far beyond any mass the tail could hold.
    const int hard_cap = 64 + static_cast<int>(16.0 * k0);
    for (int n = 1; mass < 1.0 - tail && n <= hard_cap; ++n) {
        p *= k0 / static_cast<double>(n);
        mass += p;
        w.push_back(p);
    }
    return w;
}

double network_capacity(double rho0, const Scenario& scen, const OutageFn& outage) {
    if (rho0 < 0.0) throw invalid_parameter("network_capacity: rho0 must be >= 0");
    if (rho0 == 0.0) return 0.0;
    const double area = scen.disc_area();
    const double q = rate_from_threshold(scen.sinr_th_db);
    const std::vector<double> w = poisson_weights(rho0 * area);
    // w[K+1] is the probability of K+1 active links (K interferers).
    double total = 0.0;
    for (std::size_t n = 1; n < w.size(); ++n) {
        const int k = static_cast<int>(n) - 1;
        total += static_cast<double>(n) * (1.0 - outage(k)) * q * w[n];
    }
    return total / area;
}

double network_capacity(double rho0, const Scenario& scen) {
    return network_capacity(rho0, scen, analytic_outage(scen));
}

std::vector<double> density_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo)) throw invalid_parameter("density_grid: need 0 < lo < hi");
    if (n < 2) throw invalid_parameter("density_grid: need at least 2 points");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

CapacityCurve optimal_density(const std::function<double(double)>& capacity, double rho_min,
                              double rho_max, int grid_points) {
    if (!(rho_min > 0.0) || !(rho_min < rho_max))
        throw invalid_parameter("optimal_density: need 0 < rho_min < rho_max");
    if (grid_points < 40) grid_points = 40;

    CapacityCurve curve;
    curve.densities = density_grid(rho_min, rho_max, grid_points);
    curve.capacities.reserve(curve.densities.size());
    for (double rho : curve.densities) curve.capacities.push_back(capacity(rho));

    int best = 0;
    int local_maxima = 0;
    for (int i = 0; i < grid_points; ++i) {
        if (curve.capacities[i] > curve.capacities[best]) best = i;
        const bool left_ok = i == 0 || curve.capacities[i] > curve.capacities[i - 1];
        const bool right_ok = i == grid_points - 1 || curve.capacities[i] > curve.capacities[i + 1];
        if (i > 0 && i < grid_points - 1 && left_ok && right_ok) ++local_maxima;
    }
    curve.multiple_maxima = local_maxima > 1;
    curve.boundary_optimum = best == 0 || best == grid_points - 1;

    // Golden-section refinement within the bracketing grid cells.
    double a = curve.densities[std::max(best - 1, 0)];
    double b = curve.densities[std::min(best + 1, grid_points - 1)];
    const double gr = 0.61803398874989484820;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = capacity(c), fd = capacity(d);
    while (b - a > 1e-3 * b) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = capacity(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = capacity(d);
        }
    }
    curve.rho_star = 0.5 * (a + b);
    curve.c_star = capacity(curve.rho_star);
    // The refined point can only improve on the grid best; keep whichever won.
    if (curve.capacities[best] > curve.c_star) {
        curve.rho_star = curve.densities[best];
        curve.c_star = curve.capacities[best];
    }
    return curve;
}

CapacityCurve optimal_density(const Scenario& scen, double rho_min, double rho_max,
                              int grid_points) {
    const OutageFn outage = analytic_outage(scen);
    return optimal_density([&](double rho) { return network_capacity(rho, scen, outage); },
                           rho_min, rho_max, grid_points);
}

}  // namespace mimocap
