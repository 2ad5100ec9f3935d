#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "mimocap/common.hpp"
#include "mimocap/detectors.hpp"
#include "mimocap/geometry.hpp"

namespace mimocap {

/// Runs n independent trials, writing each result into its slot. Trials
/// are seeded by index, so the serial and OpenMP paths produce identical
/// vectors; the serial path is the reference implementation for tests.
void run_trials(std::int64_t n, Execution exec, const std::function<double(std::int64_t)>& trial,
                std::vector<double>& out);

/// n_trials post-detection SINR samples under the scenario's detector;
/// trial i uses trial_seed(master_seed, i).
std::vector<double> sample_sinr(const Scenario& scen, int K, int n_trials,
                                std::uint64_t master_seed, Execution exec = Execution::Parallel);

/// Fraction of SINR samples below the scenario's decoding threshold.
double empirical_outage(const Scenario& scen, int K, int n_trials, std::uint64_t master_seed,
                        Execution exec = Execution::Parallel);

/// Per-K empirical outage store; outage depends on K only, so capacity
/// sweeps reuse values across densities. Seeds derive from (master, K).
class OutageCache {
public:
    OutageCache(const Scenario& scen, int n_trials, std::uint64_t master_seed,
                Execution exec = Execution::Parallel);

    double outage(int K);
    static std::uint64_t seed_for(std::uint64_t master, int K);

private:
    Scenario scen_;
    int n_trials_;
    std::uint64_t master_;
    Execution exec_;
    std::map<int, double> memo_;
};

/// Monte Carlo estimate of the link-layer capacity at density rho0:
/// n_outer Poisson draws of the active-link count, each scored with the
/// cached per-K empirical outage.
double empirical_capacity(const Scenario& scen, double rho0, int n_outer, int n_trials_per_k,
                          std::uint64_t master_seed, OutageCache* cache = nullptr,
                          Execution exec = Execution::Parallel);

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

/// sup_x |F_emp(x) - F(x)| evaluated at the sample points.
double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& cdf);

/// Analytic-versus-empirical agreement statistics for one (scenario, K).
struct ComparisonReport {
    double ks_distance = 0.0;
    double mean_rel_err = 0.0;
    double second_moment_rel_err = 0.0;
    int n_trials = 0;
};

ComparisonReport compare(const Scenario& scen, int K, int n_trials, std::uint64_t master_seed,
                         Execution exec = Execution::Parallel);

}  // namespace mimocap
