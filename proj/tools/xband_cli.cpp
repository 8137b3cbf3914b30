// xband_cli - run cross-band interference campaigns and write CSV results

#include "xband/config.hpp"
#include "xband/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Cross-band interference simulator for asynchronous OFDMA links"};
    app.set_version_flag("--version", xband::version_string());

    std::string experiment;
    std::string config_path;
    std::string seed, trials, out;
    std::vector<std::string> sets;
    app.add_option("--experiment", experiment,
                   "interference_strength, param_sweep, sync_error, ber, mitigation_compare, throughput, "
                   "freq_offset_sensitivity or reproduce_paper");
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "campaign seed");
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--out", out, "output directory");
    app.add_option("--set", sets, "override, key=value (repeatable)");
    CLI11_PARSE(app, argc, argv);

    std::vector<xband::KeyValue> overrides;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "configuration error: --set expects key=value, got '" << s << "'\n";
            return 2;
        }
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!experiment.empty()) overrides.emplace_back("experiment", experiment);
    if (!seed.empty()) overrides.emplace_back("seed", seed);
    if (!trials.empty()) overrides.emplace_back("trials", trials);
    if (!out.empty()) overrides.emplace_back("out", out);

    xband::RunConfig cfg;
    try {
        cfg = xband::parse_config(config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(config_path),
                                  overrides);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    return xband::run(cfg, std::cout, std::cerr);
}
