#pragma once

#include <map>
#include <string>
#include <vector>

#include "mimocap/common.hpp"

namespace mimocap {

/// Rectangular numeric result table with a metadata block (the fully
/// resolved configuration plus artifact version and seed). Rendered as
/// CSV (metadata in leading '#' comment lines, values with 17 significant
/// digits) or as a JSON object with "metadata", "columns" and "rows".
/// Rendering is byte-deterministic for identical contents.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns);

    void add_row(const std::vector<double>& row);
    void set_meta(const std::string& key, const std::string& value);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::map<std::string, std::string>& metadata() const { return meta_; }

    std::string to_csv() const;
    std::string to_json() const;

    /// Renders in the requested format ("csv" or "json").
    std::string render(const std::string& format) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::map<std::string, std::string> meta_;
};

/// Decimal text with enough digits to round-trip a double exactly.
std::string format_double(double v);

}  // namespace mimocap
