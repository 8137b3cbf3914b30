// acceptance.hpp - the reproduction checks, one verdict per criterion

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace xband {

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    int threads = 0;
    int cbi_trials = 10000;  // spectra measured against closed forms
    int mc_trials = 2000;    // packet and synchronization campaigns
    std::optional<std::filesystem::path> out_dir;  // campaign CSVs are written here when set
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Throws std::out_of_range for ids outside [1, kCriterionCount].
CriterionResult check_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// "[PASS] 3 name: detail (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace xband
