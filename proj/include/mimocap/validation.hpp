#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimocap/common.hpp"

namespace mimocap {

/// Outcome of one acceptance check. `id` is "criterion" or
/// "criterion.sub" for criteria with several bounds.
struct CheckResult {
    std::string id;
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    std::string relation;  // how measured compares against bound
    bool pass = false;
    double seconds = 0.0;
};

struct ValidationOptions {
    std::uint64_t seed = 20240809;
    Execution exec = Execution::Parallel;
    int criterion = 0;  // 0 runs all; otherwise only the given criterion
};

/// Runs every acceptance criterion at its specified trial counts and
/// tolerances. Expensive intermediate results (analytic sweeps, Monte
/// Carlo outage tables) are shared between checks.
std::vector<CheckResult> run_acceptance_checks(const ValidationOptions& opts = {});

}  // namespace mimocap
