#pragma once

#include <vector>

#include "mimocap/config.hpp"
#include "mimocap/table.hpp"

namespace mimocap {

/// Per-K grid of the analytic and empirical SINR CDFs
/// (columns K, sinr, cdf_analytic, cdf_empirical).
ResultTable cmd_sinr_cdf(const RunConfig& cfg);

/// Analytic vs empirical SINR mean and second moment, per m and per K
/// (or per density when rho_list is set).
ResultTable cmd_moments(const RunConfig& cfg);

/// Capacity-versus-density tables, one per requested detector. The
/// analytic column exists only for the MMSE detector.
std::vector<ResultTable> cmd_capacity_sweep(const RunConfig& cfg);

/// Optimal active-link density per antenna count, with the implied MAC
/// transmission probability when a total link density is supplied.
ResultTable cmd_optimal_density(const RunConfig& cfg);

struct ValidationOutcome {
    ResultTable table;
    bool all_pass = false;
};

/// Runs the acceptance-check suite and reports one row per check.
ValidationOutcome cmd_validate(const RunConfig& cfg);

}  // namespace mimocap
