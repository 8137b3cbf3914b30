// run.hpp - campaign dispatch and result files

#pragma once

#include "xband/config.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace xband {

/// Version string fixed at configure time (git describe when available).
std::string version_string();

/// Writes every table as <name>.csv plus meta.csv (with the version) into `dir`, creating it.
void write_report(const CampaignReport& report, const std::filesystem::path& dir);

/// Runs the configured experiment (or the acceptance suite for "reproduce_paper") and writes
/// CSV files. Returns the process exit status; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace xband
