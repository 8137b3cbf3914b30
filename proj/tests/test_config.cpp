#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xband/config.hpp"
#include "xband/csv.hpp"
#include "xband/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace xband;

namespace {

RunConfig parse(const std::vector<KeyValue>& kv, const std::vector<KeyValue>& over = {}) { return parse_config(kv, over); }

std::string error_of(const std::vector<KeyValue>& kv) {
    try {
        parse(kv);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("xband_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("defaults") {
    const auto c = parse({});
    const auto& sc = c.spec.scenario;
    CHECK(c.experiment == "interference_strength");
    CHECK(sc.cfg.n_fft == 64);
    CHECK(sc.cfg.n_cp == 16);
    CHECK(sc.link1.subcarriers == SubcarrierSet::range(-7, 0));
    CHECK(sc.link2.subcarriers == SubcarrierSet::range(1, 8));
    CHECK(sc.link1.power_per_subcarrier == 1.0);
    CHECK(sc.link2.power_per_subcarrier == 1.0);
    CHECK(sc.noise_power_per_subcarrier == doctest::Approx(1e-4));
    CHECK(sc.mismatch.mode == MismatchModel::Mode::uniform);
    CHECK(c.spec.n_trials == 10000);
    CHECK(c.out_dir == "results");
}

TEST_CASE("keys shape the scenario") {
    auto c = parse({{"p_r_db", "9"}});
    CHECK(c.spec.scenario.link1.power_per_subcarrier == doctest::Approx(std::pow(10.0, 0.9)));
    c = parse({{"guardband", "2"}, {"signal_subcarriers", "4"}, {"interferer_subcarriers", "3"}});
    CHECK(c.spec.scenario.link2.subcarriers == SubcarrierSet::range(3, 6));
    CHECK(c.spec.scenario.link1.subcarriers == SubcarrierSet::range(-2, 0));
    c = parse({{"tau", "20"}, {"epsilon", "0.25"}, {"channel", "rician"}, {"k_factor", "3"}});
    CHECK(c.spec.scenario.mismatch.mode == MismatchModel::Mode::fixed);
    CHECK(c.spec.scenario.freq_offset.mode == FreqOffsetModel::Mode::fixed);
    c = parse({{"p_r_list", "0, 4.5,9"}, {"experiment", "ber"}});
    CHECK(c.spec.p_r_db == std::vector<double>{0.0, 4.5, 9.0});
    CHECK(c.spec.kind == ExperimentKind::ber);
    // Overrides come after the file.
    c = parse({{"seed", "5"}}, {{"seed", "6"}});
    CHECK(c.spec.scenario.seed == 6u);
    CHECK(std::find(known_config_keys().begin(), known_config_keys().end(), "csc_selector") != known_config_keys().end());
}

TEST_CASE("bad values name their key") {
    CHECK(error_of({{"n_cp", "64"}}).find("n_cp") != std::string::npos);
    CHECK(error_of({{"n_fft", "48"}}).find("n_fft") != std::string::npos);
    CHECK(error_of({{"bogus_key", "1"}}).find("bogus_key") != std::string::npos);
    CHECK(error_of({{"trials", "ten"}}).find("trials") != std::string::npos);
    CHECK(error_of({{"epsilon_max", "0.7"}}).find("epsilon_max") != std::string::npos);
    CHECK(error_of({{"tau", "90"}}).find("tau") != std::string::npos);
    CHECK(error_of({{"experiment", "fly"}}).find("experiment") != std::string::npos);
    CHECK(error_of({{"signal_subcarriers", "40"}}).find("signal_subcarriers") != std::string::npos);
    CHECK(error_of({{"p_r_list", ""}}).find("p_r_list") != std::string::npos);
    CHECK(error_of({{"sync_filter", "maybe"}}).find("sync_filter") != std::string::npos);
}

TEST_CASE("key = value text") {
    const auto kv = parse_key_values("# header\n\nseed = 3   # trailing\n  trials=20\r\nout = a b\n");
    REQUIRE(kv.size() == 3u);
    CHECK(kv[0] == KeyValue{"seed", "3"});
    CHECK(kv[1] == KeyValue{"trials", "20"});
    CHECK(kv[2] == KeyValue{"out", "a b"});
    try {
        parse_key_values("seed = 1\njust words\n");
        FAIL("no error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_key_values("= 4"), ConfigError);
    CHECK(parse_key_values("").empty());
}

TEST_CASE("config files") {
    const auto dir = scratch("cfg");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "experiment = sync_error\ntrials = 7\n";
    const auto c = parse_config(std::optional<std::filesystem::path>(dir / "run.cfg"), {{"trials", "9"}});
    CHECK(c.spec.kind == ExperimentKind::sync_error);
    CHECK(c.spec.n_trials == 9);
    CHECK_THROWS_AS(parse_config(std::optional<std::filesystem::path>(dir / "missing.cfg")), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv formatting") {
    CHECK(format_double(1.0) == "1.00000000e+00");
    CHECK(format_double(-0.000123456789) == "-1.23456789e-04");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_cell(Cell(std::int64_t{42})) == "42");
    CHECK(format_cell(Cell(std::string("a,b"))) == "\"a,b\"");
    CHECK(format_cell(Cell(std::string("say \"hi\""))) == "\"say \"\"hi\"\"\"");

    Table t;
    t.name = "demo";
    t.description = "a demo";
    t.add_column("f", "subcarriers");
    t.add_column("label");
    t.add_row({0.5, std::string("x")});
    t.add_row({std::int64_t{2}, std::string("y")});
    std::ostringstream os;
    write_table(os, t);
    CHECK(os.str() == "# a demo | columns: f [subcarriers], label\nf,label\n5.00000000e-01,x\n2,y\n");
    CHECK(t.numbers("f") == std::vector<double>{0.5, 2.0});
    CHECK_THROWS_AS(t.numbers("g"), std::out_of_range);
}

TEST_CASE("runs are reproducible byte for byte") {
    auto once = [](const std::string& tag) {
        auto c = parse({{"experiment", "interference_strength"}, {"trials", "40"}, {"seed", "17"},
                {"interferer_widths", "4"}, {"out", scratch(tag).string()}});
        std::ostringstream out, err;
        CHECK(run(c, out, err) == 0);
        CHECK(err.str().empty());
        return c.out_dir;
    };
    const auto a = once("run_a");
    const auto b = once("run_b");
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
        const auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(b / name));
        ++files;
    }
    CHECK(files >= 2u);
    CHECK(std::filesystem::exists(a / "meta.csv"));
    CHECK(slurp(a / "meta.csv").find("version," + version_string()) != std::string::npos);
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}
