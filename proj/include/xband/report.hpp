// report.hpp - tabular campaign results

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xband {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::string name;         // file stem
    std::string description;  // written as the leading comment line
    std::vector<std::string> columns;
    std::vector<std::string> units;  // one per column, may be empty strings
    std::vector<std::vector<Cell>> rows;

    void add_column(std::string name, std::string unit = "");
    void add_row(std::vector<Cell> row);
    std::size_t column_index(const std::string& name) const;
    /// Numeric column (int cells converted); throws std::out_of_range for unknown names.
    std::vector<double> numbers(const std::string& name) const;
    std::vector<std::string> strings(const std::string& name) const;
};

struct CampaignReport {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<Table> tables;
    std::int64_t failed_trials = 0;

    const Table& table(const std::string& name) const;
    void set_meta(const std::string& key, const std::string& value);
    std::string meta_value(const std::string& key) const;
};

}  // namespace xband
