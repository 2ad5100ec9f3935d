#include "mimocap/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "mimocap/analysis.hpp"
#include "mimocap/capacity.hpp"
#include "mimocap/rng.hpp"

namespace mimocap {

void run_trials(std::int64_t n, Execution exec, const std::function<double(std::int64_t)>& trial,
                std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n));
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i) out[i] = trial(i);
        return;
    }
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) out[i] = trial(i);
}

std::vector<double> sample_sinr(const Scenario& scen, int K, int n_trials,
                                std::uint64_t master_seed, Execution exec) {
    if (n_trials < 1) throw invalid_parameter("sample_sinr: n_trials must be >= 1");
    scen.validate();
    std::vector<double> out;
    run_trials(
        n_trials, exec,
        [&](std::int64_t i) {
            const NetworkRealization r =
                build_realization(scen, K, trial_seed(master_seed, static_cast<std::uint64_t>(i)));
            return detect_sinr(scen, r);
        },
        out);
    return out;
}

double empirical_outage(const Scenario& scen, int K, int n_trials, std::uint64_t master_seed,
                        Execution exec) {
    const std::vector<double> s = sample_sinr(scen, K, n_trials, master_seed, exec);
    const double th = scen.sinr_threshold();
    const auto below = std::count_if(s.begin(), s.end(), [th](double x) { return x < th; });
    return static_cast<double>(below) / static_cast<double>(s.size());
}

OutageCache::OutageCache(const Scenario& scen, int n_trials, std::uint64_t master_seed,
                         Execution exec)
    : scen_(scen), n_trials_(n_trials), master_(master_seed), exec_(exec) {}

std::uint64_t OutageCache::seed_for(std::uint64_t master, int K) {
    // Distinct stream per interferer count, independent of evaluation order.
    return splitmix64(master ^ trial_seed(0x07A6CULL, static_cast<std::uint64_t>(K)));
}

double OutageCache::outage(int K) {
    if (auto it = memo_.find(K); it != memo_.end()) return it->second;
    const double p = empirical_outage(scen_, K, n_trials_, seed_for(master_, K), exec_);
    memo_[K] = p;
    return p;
}

double empirical_capacity(const Scenario& scen, double rho0, int n_outer, int n_trials_per_k,
                          std::uint64_t master_seed, OutageCache* cache, Execution exec) {
    if (rho0 < 0.0) throw invalid_parameter("empirical_capacity: rho0 must be >= 0");
    if (n_outer < 1) throw invalid_parameter("empirical_capacity: n_outer must be >= 1");
    if (rho0 == 0.0) return 0.0;

    OutageCache local(scen, n_trials_per_k, master_seed, exec);
    OutageCache& oc = cache ? *cache : local;

    const double q = rate_from_threshold(scen.sinr_th_db);
    const double area = scen.disc_area();
    const double k0 = rho0 * area;

    // Outer draws share one stream; the per-K outage estimates come from
    // the cache so the estimator is reusable across densities.
    Rng rng(splitmix64(master_seed ^ 0xa15e5ULL));
    double total = 0.0;
    for (int j = 0; j < n_outer; ++j) {
        const int links = rng.poisson(k0);
        if (links == 0) continue;
        total += links * (1.0 - oc.outage(links - 1)) * q;
    }
    return total / (static_cast<double>(n_outer) * area);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw invalid_parameter("EmpiricalCdf: sample must be nonempty");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& cdf) {
    const auto& xs = emp.sorted();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

ComparisonReport compare(const Scenario& scen, int K, int n_trials, std::uint64_t master_seed,
                         Execution exec) {
    const EmpiricalCdf emp(sample_sinr(scen, K, n_trials, master_seed, exec));
    double mean = 0.0, m2 = 0.0;
    for (double x : emp.sorted()) {
        mean += x;
        m2 += x * x;
    }
    mean /= static_cast<double>(emp.size());
    m2 /= static_cast<double>(emp.size());

    const SinrMoments mom = sinr_moments(K, scen);
    const GammaFit fit = gamma_fit(mom.mean, mom.variance);

    ComparisonReport rep;
    rep.n_trials = n_trials;
    rep.ks_distance = ks_distance(emp, [&](double x) { return gamma_cdf(x, fit); });
    rep.mean_rel_err = std::abs(mom.mean - mean) / mean;
    rep.second_moment_rel_err = std::abs(mom.mean * mom.mean + mom.variance - m2) / m2;
    return rep;
}

}  // namespace mimocap
