#include "xband/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace xband {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

}  // namespace

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* n = std::get_if<std::int64_t>(&c)) return std::to_string(*n);
    return quote(std::get<std::string>(c));
}

void write_table(std::ostream& os, const Table& t) {
    os << "# " << t.description << " | columns:";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? ", " : " ") << t.columns[i];
        if (i < t.units.size() && !t.units[i].empty()) os << " [" << t.units[i] << "]";
    }
    os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_cell(r[i]);
        os << '\n';
    }
}

void write_table(const std::filesystem::path& path, const Table& t) {
    auto os = open(path);
    write_table(os, t);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

void write_meta(const std::filesystem::path& path, const CampaignReport& report) {
    auto os = open(path);
    os << "# run metadata | columns: key, value\n";
    os << "key,value\n";
    for (const auto& [k, v] : report.meta) os << quote(k) << ',' << quote(v) << '\n';
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace xband
