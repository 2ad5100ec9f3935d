#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimocap/commands.hpp"
#include "mimocap/randmat.hpp"

namespace {

using mimocap::ResultTable;
using mimocap::RunConfig;

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out;
    std::string format;
    std::string seed;
    std::string trials;
    std::string moment_cache = "lambda_moments.cache";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "configuration file (key = value lines)");
    cmd->add_option("--set", f.overrides, "override one key=value (repeatable)");
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "output format: csv|json");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per configuration");
    cmd->add_option("--moment-cache", f.moment_cache,
                    "moment cache file (empty string disables persistence)");
}

RunConfig resolve(const CommonFlags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg.load_file(f.config_path);
    for (const auto& o : f.overrides) cfg.set(o);
    if (!f.out.empty()) cfg.set("out", f.out);
    if (!f.format.empty()) cfg.set("format", f.format);
    if (!f.seed.empty()) cfg.set("seed", f.seed);
    if (!f.trials.empty()) cfg.set("trials", f.trials);
    if (!f.moment_cache.empty()) mimocap::MomentCache::instance().set_path(f.moment_cache);
    return cfg;
}

void emit(const ResultTable& table, const RunConfig& cfg, const std::string& suffix = "") {
    const std::string text = table.render(cfg.get("format"));
    std::string path = cfg.get("out");
    if (path.empty()) {
        std::cout << text;
        return;
    }
    if (!suffix.empty()) {
        const auto dot = path.rfind('.');
        path = dot == std::string::npos ? path + "_" + suffix
                                        : path.substr(0, dot) + "_" + suffix + path.substr(dot);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mimocap::invalid_parameter("out: cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MIMO ad-hoc network capacity: analytic eta-transform pipeline "
                 "and Monte Carlo link simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* c_cdf = app.add_subcommand("sinr-cdf", "analytic vs empirical SINR CDF per K");
    CLI::App* c_mom = app.add_subcommand("moments", "SINR mean and second moment tables");
    CLI::App* c_cap = app.add_subcommand("capacity-sweep", "capacity vs active-link density");
    CLI::App* c_opt = app.add_subcommand("optimal-density", "density maximizing capacity per m");
    CLI::App* c_val = app.add_subcommand("validate", "run the acceptance-check suite");
    for (CLI::App* c : {c_cdf, c_mom, c_cap, c_opt, c_val}) add_common(c, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = resolve(flags);
        if (c_cdf->parsed()) {
            emit(mimocap::cmd_sinr_cdf(cfg), cfg);
        } else if (c_mom->parsed()) {
            emit(mimocap::cmd_moments(cfg), cfg);
        } else if (c_cap->parsed()) {
            const auto tables = mimocap::cmd_capacity_sweep(cfg);
            for (const auto& t : tables)
                emit(t, cfg, tables.size() > 1 ? t.metadata().at("detector") : "");
        } else if (c_opt->parsed()) {
            emit(mimocap::cmd_optimal_density(cfg), cfg);
        } else if (c_val->parsed()) {
            const mimocap::ValidationOutcome v = mimocap::cmd_validate(cfg);
            emit(v.table, cfg);
            if (!v.all_pass) {
                std::cerr << "validate: one or more acceptance checks failed\n";
                return 2;
            }
        }
    } catch (const mimocap::invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mimocap::numeric_failure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
