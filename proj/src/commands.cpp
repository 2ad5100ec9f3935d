#include "mimocap/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mimocap/analysis.hpp"
#include "mimocap/capacity.hpp"
#include "mimocap/montecarlo.hpp"
#include "mimocap/randmat.hpp"
#include "mimocap/rng.hpp"
#include "mimocap/validation.hpp"

namespace mimocap {

namespace {

std::uint64_t per_k_seed(std::uint64_t master, int k) { return OutageCache::seed_for(master, k); }

// Resolves the path key: which of the analytic/empirical pipelines a
// capacity command should run for a given detector.
struct PathChoice {
    bool analytic = false;
    bool empirical = false;
};

PathChoice resolve_path(const std::string& path, DetectorKind det, bool default_both) {
    const bool is_mmse = det == DetectorKind::Mmse;
    if (path == "auto") {
        if (is_mmse) return {true, default_both};
        return {false, true};
    }
    PathChoice c;
    if (path == "analytic")
        c = {true, false};
    else if (path == "empirical")
        c = {false, true};
    else if (path == "both")
        c = {true, true};
    else
        throw invalid_parameter("config: key 'path' must be auto|analytic|empirical|both");
    if (c.analytic && !is_mmse)
        throw invalid_parameter("path: the analytic pipeline supports only the mmse detector "
                                "(requested for " + to_string(det) + ")");
    return c;
}

}  // namespace

ResultTable cmd_sinr_cdf(const RunConfig& cfg) {
    const Scenario scen = cfg.scenario();
    const std::vector<int> k_list = cfg.get_int_list("k_list");
    if (k_list.empty()) throw invalid_parameter("config: key 'k_list' must be nonempty");
    const int trials = cfg.get_int("trials");
    const int grid_points = std::max(cfg.get_int("grid_points"), 200);
    const std::uint64_t seed = cfg.get_seed();
    // The analytic fit exists for the MMSE receiver only; other detectors
    // get an empirical-only table.
    const bool analytic = scen.detector == DetectorKind::Mmse;

    ResultTable table(analytic
                          ? std::vector<std::string>{"K", "sinr", "cdf_analytic", "cdf_empirical"}
                          : std::vector<std::string>{"K", "sinr", "cdf_empirical"});
    for (int k : k_list) {
        if (k < 0) throw invalid_parameter("config: key 'k_list' must list K >= 0");
        const EmpiricalCdf emp(sample_sinr(scen, k, trials, per_k_seed(seed, k)));
        GammaFit fit;
        if (analytic) {
            const SinrMoments mom = sinr_moments(k, scen);
            fit = gamma_fit(mom.mean, mom.variance);
        }
        const double lo = emp.sorted().front();
        const double hi = emp.sorted().back();
        for (int i = 0; i < grid_points; ++i) {
            const double x = lo + (hi - lo) * i / (grid_points - 1);
            std::vector<double> row{static_cast<double>(k), x};
            if (analytic) row.push_back(gamma_cdf(x, fit));
            row.push_back(emp(x));
            table.add_row(row);
        }
    }
    cfg.stamp(table, "sinr-cdf");
    return table;
}

ResultTable cmd_moments(const RunConfig& cfg) {
    const Scenario base = cfg.scenario();
    const std::vector<int> m_list = cfg.get_int_list("m_list");
    if (m_list.empty()) throw invalid_parameter("config: key 'm_list' must be nonempty");
    const int trials = cfg.get_int("trials");
    const std::uint64_t seed = cfg.get_seed();
    const std::vector<double> rho_list = cfg.get_double_list("rho_list");
    const bool density_mode = !rho_list.empty();
    const bool analytic = base.detector == DetectorKind::Mmse;

    std::vector<std::string> cols{"m", density_mode ? "rho0" : "K"};
    if (analytic) {
        cols.insert(cols.end(), {"mean_analytic", "mean_empirical", "m2_analytic",
                                 "m2_empirical"});
    } else {
        cols.insert(cols.end(), {"mean_empirical", "m2_empirical"});
    }
    ResultTable table(cols);

    const auto add = [&](double m, double axis, double mean_a, double mean_e, double m2_a,
                         double m2_e) {
        if (analytic)
            table.add_row({m, axis, mean_a, mean_e, m2_a, m2_e});
        else
            table.add_row({m, axis, mean_e, m2_e});
    };

    for (int m : m_list) {
        Scenario scen = base;
        scen.m = m;
        scen.validate();
        if (!density_mode) {
            for (int k : cfg.get_int_list("k_list")) {
                const std::vector<double> s = sample_sinr(scen, k, trials, per_k_seed(seed, k));
                double mean = 0.0, m2 = 0.0;
                for (double x : s) {
                    mean += x;
                    m2 += x * x;
                }
                mean /= s.size();
                m2 /= s.size();
                double mean_a = 0.0, m2_a = 0.0;
                if (analytic) {
                    const SinrMoments mom = sinr_moments(k, scen);
                    mean_a = mom.mean;
                    m2_a = mom.mean * mom.mean + mom.variance;
                }
                add(m, k, mean_a, mean, m2_a, m2);
            }
            continue;
        }
        // Density mode: the interferer count of each trial is Poisson with
        // mean rho0*pi*R^2 total links, the tagged link being one of them.
        for (double rho : rho_list) {
            double mean_a = 0.0, m2_a = 0.0;
            if (analytic) {
                const std::vector<double> w = poisson_weights(rho * scen.disc_area());
                double wsum = 0.0;
                for (std::size_t n = 0; n < w.size(); ++n) {
                    const int k = n == 0 ? 0 : static_cast<int>(n) - 1;
                    const SinrMoments mom = sinr_moments(k, scen);
                    mean_a += w[n] * mom.mean;
                    m2_a += w[n] * (mom.mean * mom.mean + mom.variance);
                    wsum += w[n];
                }
                mean_a /= wsum;
                m2_a /= wsum;
            }

            std::vector<double> s;
            run_trials(
                trials, Execution::Parallel,
                [&](std::int64_t i) {
                    const std::uint64_t ts = trial_seed(seed, static_cast<std::uint64_t>(i));
                    const int links = sample_active_count(rho, scen, splitmix64(ts));
                    const int k = links > 0 ? links - 1 : 0;
                    return detect_sinr(scen, build_realization(scen, k, ts));
                },
                s);
            double mean_e = 0.0, m2_e = 0.0;
            for (double x : s) {
                mean_e += x;
                m2_e += x * x;
            }
            mean_e /= s.size();
            m2_e /= s.size();
            add(m, rho, mean_a, mean_e, m2_a, m2_e);
        }
    }
    cfg.stamp(table, "moments");
    return table;
}

std::vector<ResultTable> cmd_capacity_sweep(const RunConfig& cfg) {
    const Scenario base = cfg.scenario();
    std::vector<std::string> detector_names;
    if (cfg.has("detectors")) {
        std::istringstream ss(cfg.get("detectors"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) detector_names.push_back(item);
        }
    } else {
        detector_names.push_back(to_string(base.detector));
    }
    if (detector_names.empty()) throw invalid_parameter("config: no detector requested");

    const std::vector<double> grid =
        density_grid(cfg.get_double("rho_min"), cfg.get_double("rho_max"), cfg.get_int("rho_points"));
    const int trials = cfg.get_int("trials");
    const int outer = cfg.get_int("outer_trials");
    const std::uint64_t seed = cfg.get_seed();

    std::vector<ResultTable> tables;
    for (const std::string& name : detector_names) {
        Scenario scen = base;
        scen.detector = detector_from_string(name);
        scen.validate();
        const PathChoice path = resolve_path(cfg.get("path"), scen.detector, true);

        std::vector<std::string> cols{"rho0"};
        if (path.analytic) cols.push_back("capacity_analytic");
        if (path.empirical) cols.push_back("capacity_empirical");
        ResultTable table(cols);

        const OutageFn outage = analytic_outage(scen);
        OutageCache cache(scen, trials, seed);
        for (double rho : grid) {
            std::vector<double> row{rho};
            if (path.analytic) row.push_back(network_capacity(rho, scen, outage));
            if (path.empirical)
                row.push_back(empirical_capacity(scen, rho, outer, trials, seed, &cache));
            table.add_row(row);
        }
        cfg.stamp(table, "capacity-sweep");
        table.set_meta("detector", name);
        tables.push_back(std::move(table));
    }
    return tables;
}

ResultTable cmd_optimal_density(const RunConfig& cfg) {
    const Scenario base = cfg.scenario();
    const std::vector<int> m_list = cfg.get_int_list("m_list");
    if (m_list.empty()) throw invalid_parameter("config: key 'm_list' must be nonempty");
    const double rho_min = cfg.get_double("rho_min");
    const double rho_max = cfg.get_double("rho_max");
    const int points = std::max(cfg.get_int("rho_points"), 40);
    const double total_density = cfg.get_double("total_density");
    const int trials = cfg.get_int("trials");
    const int outer = cfg.get_int("outer_trials");
    const std::uint64_t seed = cfg.get_seed();

    std::vector<std::string> cols{"m", "rho_star", "c_star", "boundary_warning"};
    if (total_density > 0.0) {
        cols.push_back("p_t_star");
        cols.push_back("saturated");
    }
    ResultTable table(cols);

    for (int m : m_list) {
        Scenario scen = base;
        scen.m = m;
        scen.validate();
        const PathChoice path = resolve_path(cfg.get("path"), scen.detector, false);

        CapacityCurve curve;
        if (path.analytic) {
            curve = optimal_density(scen, rho_min, rho_max, points);
        } else {
            OutageCache cache(scen, trials, seed);
            curve = optimal_density(
                [&](double rho) {
                    return empirical_capacity(scen, rho, outer, trials, seed, &cache);
                },
                rho_min, rho_max, points);
        }

        std::vector<double> row{static_cast<double>(m), curve.rho_star, curve.c_star,
                                curve.boundary_optimum ? 1.0 : 0.0};
        if (total_density > 0.0) {
            const double pt = curve.rho_star / total_density;
            row.push_back(std::min(pt, 1.0));
            row.push_back(pt > 1.0 ? 1.0 : 0.0);
        }
        table.add_row(row);
    }
    cfg.stamp(table, "optimal-density");
    return table;
}

ValidationOutcome cmd_validate(const RunConfig& cfg) {
    ValidationOptions opts;
    opts.seed = cfg.get_seed();
    const std::vector<CheckResult> checks = run_acceptance_checks(opts);

    ResultTable table({"criterion", "subcheck", "measured", "bound", "pass", "seconds"});
    bool all = true;
    int sub = 0;
    int last = 0;
    for (const CheckResult& c : checks) {
        sub = c.criterion == last ? sub + 1 : 1;
        last = c.criterion;
        table.add_row({static_cast<double>(c.criterion), static_cast<double>(sub), c.measured,
                       c.bound, c.pass ? 1.0 : 0.0, c.seconds});
        table.set_meta("check_" + c.id, c.name + " (" + c.relation + ")");
        all = all && c.pass;
    }
    cfg.stamp(table, "validate");
    return {std::move(table), all};
}

}  // namespace mimocap
