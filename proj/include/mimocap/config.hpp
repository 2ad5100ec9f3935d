#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mimocap/geometry.hpp"
#include "mimocap/table.hpp"

namespace mimocap {

/// Flat key-value run configuration: file contents plus command-line
/// overrides, resolved against shipped defaults. Every emitted table
/// embeds the resolved form so a run can be reproduced from its output.
class RunConfig {
public:
    RunConfig();

    /// Parses "key = value" lines; '#' starts a comment. Unknown keys are
    /// rejected with a diagnostic naming the key.
    void load_file(const std::string& path);

    /// Applies one "key=value" override (command line wins over file).
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    std::string get(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_seed() const;
    std::vector<int> get_int_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    bool has(const std::string& key) const;

    /// Scenario assembled from the scenario-level keys (validated).
    Scenario scenario() const;

    /// Copies the resolved configuration and artifact version into a table.
    void stamp(ResultTable& table, const std::string& command) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    void check_key(const std::string& key) const;
    std::map<std::string, std::string> values_;
};

}  // namespace mimocap
