// Acceptance suite: runs every acceptance criterion at its specified
// tolerance and trial count and prints one PASS/FAIL line per criterion.
// With `--criterion N` only that criterion runs (used by ctest to report
// criteria individually).
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "mimocap/randmat.hpp"
#include "mimocap/validation.hpp"

int main(int argc, char** argv) {
    mimocap::ValidationOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            opts.criterion = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--seed S]\n", argv[0]);
            return 2;
        }
    }

    mimocap::MomentCache::instance().set_path("lambda_moments.cache");

    const std::vector<mimocap::CheckResult> checks = mimocap::run_acceptance_checks(opts);
    if (checks.empty()) {
        std::fprintf(stderr, "no such criterion: %d\n", opts.criterion);
        return 2;
    }

    std::map<int, bool> by_criterion;
    std::map<int, double> seconds;
    for (const auto& c : checks) {
        auto [it, fresh] = by_criterion.emplace(c.criterion, c.pass);
        if (!fresh) it->second = it->second && c.pass;
        seconds[c.criterion] += c.seconds;
        std::printf("  [%-4s] %-70s measured=%.6g bound(%s)=%.6g %s (%.1fs)\n", c.id.c_str(),
                    c.name.c_str(), c.measured, c.relation.c_str(), c.bound,
                    c.pass ? "ok" : "FAILED", c.seconds);
    }

    int failures = 0;
    for (const auto& [criterion, pass] : by_criterion) {
        std::printf("criterion %2d: %s (%.1fs)\n", criterion, pass ? "PASS" : "FAIL",
                    seconds[criterion]);
        if (!pass) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, by_criterion.size());
    return failures == 0 ? 0 : 1;
}
