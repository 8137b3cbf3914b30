#include "xband/report.hpp"

#include <stdexcept>

namespace xband {

void Table::add_column(std::string col, std::string unit) {
    columns.push_back(std::move(col));
    units.push_back(std::move(unit));
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& col) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == col) return i;
    throw std::out_of_range("table " + name + " has no column " + col);
}

std::vector<double> Table::numbers(const std::string& col) const {
    const auto i = column_index(col);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (const auto* d = std::get_if<double>(&r[i]))
            out.push_back(*d);
        else if (const auto* n = std::get_if<std::int64_t>(&r[i]))
            out.push_back(static_cast<double>(*n));
        else
            throw std::invalid_argument("column " + col + " is not numeric");
    }
    return out;
}

std::vector<std::string> Table::strings(const std::string& col) const {
    const auto i = column_index(col);
    std::vector<std::string> out;
    for (const auto& r : rows) {
        const auto* s = std::get_if<std::string>(&r[i]);
        if (!s) throw std::invalid_argument("column " + col + " is not textual");
        out.push_back(*s);
    }
    return out;
}

const Table& CampaignReport::table(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return t;
    throw std::out_of_range("report has no table " + name);
}

void CampaignReport::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : meta)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    meta.emplace_back(key, value);
}

std::string CampaignReport::meta_value(const std::string& key) const {
    for (const auto& kv : meta)
        if (kv.first == key) return kv.second;
    throw std::out_of_range("report has no meta key " + key);
}

}  // namespace xband
