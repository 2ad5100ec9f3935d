#include "mimocap/table.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace mimocap {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw invalid_parameter("ResultTable: need at least one column");
}

void ResultTable::add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size())
        throw invalid_parameter("ResultTable: row width does not match column count");
    rows_.push_back(row);
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
    meta_[key] = value;
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c)
        out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_)
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    return out.str();
}

std::string ResultTable::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta_) meta[k] = v;
    j["metadata"] = std::move(meta);
    j["columns"] = columns_;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) rows.push_back(row);
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string ResultTable::render(const std::string& format) const {
    if (format == "csv") return to_csv();
    if (format == "json") return to_json();
    throw invalid_parameter("format: expected csv|json, got '" + format + "'");
}

}  // namespace mimocap
