// config.hpp - run configuration from key = value files and command-line overrides

#pragma once

#include "xband/harness.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xband {

struct RunConfig {
    std::string experiment = "interference_strength";  // an ExperimentKind name or "reproduce_paper"
    ExperimentSpec spec;
    std::filesystem::path out_dir = "results";
    std::string format = "csv";
    double p_r_db = 0.0;
};

using KeyValue = std::pair<std::string, std::string>;

/// "key = value" lines; '#' starts a comment. Throws ConfigError naming the line.
std::vector<KeyValue> parse_key_values(std::string_view text);

/// Applies file entries then overrides (later wins) on top of the defaults, then validates.
/// Errors name the offending key.
RunConfig parse_config(const std::vector<KeyValue>& file_entries, const std::vector<KeyValue>& overrides = {});
RunConfig parse_config(const std::optional<std::filesystem::path>& file, const std::vector<KeyValue>& overrides = {});

/// Every key parse_config accepts.
const std::vector<std::string>& known_config_keys();

}  // namespace xband
