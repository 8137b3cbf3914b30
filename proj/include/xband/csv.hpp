// csv.hpp - stable CSV serialization of report tables

#pragma once

#include "xband/report.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace xband {

/// Scientific notation with 9 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);
std::string format_cell(const Cell& c);

/// Comment line "# <description> | col [unit], ...", header row, data rows; LF endings.
void write_table(std::ostream& os, const Table& t);
void write_table(const std::filesystem::path& path, const Table& t);

/// key,value rows.
void write_meta(const std::filesystem::path& path, const CampaignReport& report);

}  // namespace xband
