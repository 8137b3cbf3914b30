#include "xband/run.hpp"

#include "xband/acceptance.hpp"
#include "xband/csv.hpp"

#include <fstream>

#ifndef XBAND_VERSION
#define XBAND_VERSION "unknown"
#endif

namespace xband {

std::string version_string() { return XBAND_VERSION; }

void write_report(const CampaignReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& t : report.tables) write_table(dir / (t.name + ".csv"), t);
    CampaignReport with_version = report;
    with_version.set_meta("version", version_string());
    write_meta(dir / "meta.csv", with_version);
}

namespace {

int reproduce(const RunConfig& config, std::ostream& out) {
    AcceptanceOptions opts;
    opts.seed = config.spec.scenario.seed;
    opts.threads = config.spec.threads;
    opts.cbi_trials = config.spec.n_trials;
    opts.mc_trials = std::min(config.spec.n_trials, 2000);
    opts.out_dir = config.out_dir;
    std::filesystem::create_directories(config.out_dir);

    Table summary;
    summary.name = "acceptance";
    summary.description = "reproduction checks";
    summary.add_column("criterion");
    summary.add_column("name");
    summary.add_column("pass");
    summary.add_column("detail");
    bool all = true;
    for (int id = 1; id <= kCriterionCount; ++id) {
        const auto r = check_criterion(id, opts);
        out << format_result(r) << '\n' << std::flush;
        all = all && r.pass;
        summary.add_row({static_cast<std::int64_t>(r.id), r.name, std::string(r.pass ? "pass" : "fail"), r.detail});
    }
    write_table(config.out_dir / "acceptance.csv", summary);

    CampaignReport meta;
    meta.set_meta("experiment", "reproduce_paper");
    meta.set_meta("seed", std::to_string(opts.seed));
    meta.set_meta("cbi_trials", std::to_string(opts.cbi_trials));
    meta.set_meta("mc_trials", std::to_string(opts.mc_trials));
    write_report(meta, config.out_dir);
    out << (all ? "all criteria passed" : "some criteria failed") << '\n';
    return all ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.experiment == "reproduce_paper") return reproduce(config, out);
        const auto report = run_experiment(config.spec);
        write_report(report, config.out_dir);
        for (const auto& t : report.tables) out << (config.out_dir / (t.name + ".csv")).string() << '\n';
        if (report.failed_trials > 0) err << "warning: " << report.failed_trials << " trials failed\n";
        return 0;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace xband
