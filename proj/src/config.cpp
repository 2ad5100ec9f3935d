#include "mimocap/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace mimocap {

namespace {

constexpr std::array kKnownKeys = {
    "m",        "c0",       "R",          "eps",        "theta",       "snr_db",
    "sinr_th_db", "detector", "csi_range", "k_list",     "m_list",      "rho_list",
    "rho_min",  "rho_max",  "rho_points", "grid_points", "trials",     "outer_trials",
    "seed",     "total_density", "path",  "detectors",  "format",      "out",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig::RunConfig() {
    values_ = {
        {"m", "4"},          {"c0", "1"},        {"R", "3"},           {"eps", "0.1"},
        {"theta", "4"},      {"snr_db", "20"},   {"sinr_th_db", "10"}, {"detector", "mmse"},
        {"csi_range", "2"},  {"k_list", "2,20"}, {"m_list", "2,4,6"},  {"rho_list", ""},
        {"rho_min", "0.02"}, {"rho_max", "2"},   {"rho_points", "40"}, {"grid_points", "200"},
        {"trials", "10000"}, {"outer_trials", "2000"}, {"seed", "1"},  {"total_density", "0"},
        {"path", "auto"},    {"detectors", ""},  {"format", "csv"},    {"out", ""},
    };
}

void RunConfig::check_key(const std::string& key) const {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
        throw invalid_parameter("config: unknown key '" + key + "'");
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("config: cannot open file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_parameter("config: line " + std::to_string(lineno) +
                                    " is not of the form key = value");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void RunConfig::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw invalid_parameter("config: override '" + assignment + "' is not key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
    check_key(key);
    values_[key] = value;
}

std::string RunConfig::get(const std::string& key) const {
    check_key(key);
    return values_.at(key);
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw invalid_parameter("config: key '" + key + "' has non-numeric value '" + v + "'");
    }
}

int RunConfig::get_int(const std::string& key) const {
    const double x = get_double(key);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw invalid_parameter("config: key '" + key + "' must be an integer");
    return i;
}

std::uint64_t RunConfig::get_seed() const {
    const std::string v = get("seed");
    try {
        std::size_t pos = 0;
        const std::uint64_t s = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return s;
    } catch (const std::exception&) {
        throw invalid_parameter("config: key 'seed' has invalid value '" + v + "'");
    }
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    const std::string v = get(key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw invalid_parameter("config: key '" + key + "' has non-numeric item '" + item +
                                    "'");
        }
    }
    return out;
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (double x : get_double_list(key)) {
        const int i = static_cast<int>(x);
        if (static_cast<double>(i) != x)
            throw invalid_parameter("config: key '" + key + "' must list integers");
        out.push_back(i);
    }
    return out;
}

bool RunConfig::has(const std::string& key) const { return !get(key).empty(); }

Scenario RunConfig::scenario() const {
    Scenario s;
    s.m = get_int("m");
    s.c0 = get_double("c0");
    s.R = get_double("R");
    s.eps = get_double("eps");
    s.theta = get_double("theta");
    s.snr_db = get_double("snr_db");
    s.sinr_th_db = get_double("sinr_th_db");
    s.detector = detector_from_string(get("detector"));
    s.csi_range = get_double("csi_range");
    s.validate();
    return s;
}

void RunConfig::stamp(ResultTable& table, const std::string& command) const {
    for (const auto& [k, v] : values_) table.set_meta(k, v);
    table.set_meta("version", kVersion);
    table.set_meta("command", command);
}

}  // namespace mimocap
