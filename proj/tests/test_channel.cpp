#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "xband/analytic.hpp"
#include "xband/channel.hpp"


using namespace xband;

namespace {

ScenarioSpec clean_scenario() {
    ScenarioSpec sc;
    sc.noise_power_per_subcarrier = 0.0;
    sc.channel = ChannelModel::non_fading();
    return sc;
}

std::vector<double> integers(int a, int b) {
    std::vector<double> v;
    for (int f = a; f <= b; ++f) v.push_back(f);
    return v;
}

}  // namespace

TEST_CASE("scenario validation") {
    ScenarioSpec sc;
    CHECK_NOTHROW(sc.validate());
    sc.link2.subcarriers = SubcarrierSet::range(0, 8);
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioSpec{};
    sc.freq_offset = FreqOffsetModel::fixed(0.6);
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioSpec{};
    sc.mismatch = MismatchModel::fixed(80.0);
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioSpec{};
    sc.link1.power_per_subcarrier = std::pow(10.0, 0.9);
    CHECK(sc.power_ratio_db() == doctest::Approx(9.0));
}

TEST_CASE("fading coefficients have unit mean power") {
    for (double k : {0.0, 1.0, 10.0}) {
        Rng rng(77);
        const auto model = ChannelModel::rician(k);
        double acc = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) acc += std::norm(draw_channel_coefficient(model, rng));
        CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
    }
    Rng rng(1);
    const Complex h = draw_channel_coefficient(ChannelModel::rician(1e12), rng);
    CHECK(std::abs(h) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(draw_channel_coefficient(ChannelModel::non_fading(), rng) == Complex(1.0, 0.0));
}

TEST_CASE("tied and independent channel draws") {
    ScenarioSpec sc;
    sc.channel = ChannelModel::rayleigh(true);
    auto d = draw_trial(sc, 3);
    CHECK(d.h1 == d.h2);
    sc.channel = ChannelModel::rayleigh(false);
    d = draw_trial(sc, 3);
    CHECK(d.h1 != d.h2);
}

TEST_CASE("uniform mismatch: fraction inside the CP equals rho") {
    ScenarioSpec sc;
    int inside = 0;
    const int n = 10000;
    for (int t = 0; t < n; ++t) {
        const auto d = draw_trial(sc, static_cast<std::uint64_t>(t));
        CHECK(d.tau >= 0.0);
        CHECK(d.tau < 80.0);
        CHECK(d.tau_samples >= 0);
        CHECK(d.tau_samples < 80);
        inside += d.tau <= 16.0;
    }
    CHECK(static_cast<double>(inside) / n == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("perfect synchronization is orthogonal") {
    ScenarioSpec sc = clean_scenario();
    sc.mismatch = MismatchModel::fixed(0.0);
    const auto rx = realize_trial(sc, 3, 11);
    REQUIRE(rx.samples.size() >= static_cast<std::size_t>(3 * sc.cfg.frame_length()));
    for (int j = 0; j < 3; ++j) {
        const auto got = demodulate_window(rx.window(j, sc.cfg), sc.cfg, sc.link2.subcarriers);
        const auto& sent = rx.link2_symbols[static_cast<std::size_t>(j)];
        for (int k : sc.link2.subcarriers) CHECK(std::abs(got.at(k) - sent.at(k)) < 1e-12);
        const auto leak = demodulate_window(rx.interference_window(j, sc.cfg), sc.cfg, sc.link2.subcarriers);
        for (auto v : leak.values) CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("trials are reproducible") {
    ScenarioSpec sc;
    sc.channel = ChannelModel::rayleigh();
    sc.freq_offset = FreqOffsetModel::uniform(0.3);
    const auto a = realize_trial(sc, 4, 99);
    const auto b = realize_trial(sc, 4, 99);
    CHECK(a.samples == b.samples);
    const auto c = realize_trial(sc, 4, 100);
    CHECK(a.samples != c.samples);
}

TEST_CASE("noise has the configured per-subcarrier power") {
    OfdmConfig cfg;
    Rng rng(4);
    const double p = 0.5;
    const auto set = SubcarrierSet::range(-32, 31);
    double acc = 0.0;
    const int reps = 2000;
    for (int r = 0; r < reps; ++r) {
        std::vector<Complex> x(64);
        add_awgn(x, p, 64, rng);
        for (auto v : demodulate_window(x, cfg, set).values) acc += std::norm(v);
    }
    CHECK(acc / (reps * 64.0) == doctest::Approx(p).epsilon(0.02));
}

TEST_CASE("dtft probe") {
    OfdmConfig cfg;
    const auto tone = oracles::naive_idft({3}, {Complex(1, 0)}, 64);
    SUBCASE("Dirichlet nulls at integers") {
        const auto spec = dtft_probe(tone, cfg, integers(-10, 10));
        for (std::size_t i = 0; i < spec.f_grid.size(); ++i)
            CHECK(spec.values[i] == doctest::Approx(spec.f_grid[i] == 3.0 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
    }
    SUBCASE("cyclic shifts of a tone change phase only") {
        std::vector<double> f;
        for (double x = -4.0; x <= 10.0; x += 0.37) f.push_back(x);
        const auto base = dtft_probe(tone, cfg, f);
        for (int d : {4, 16}) {
            std::vector<Complex> s(64);
            for (int i = 0; i < 64; ++i) s[static_cast<std::size_t>(i)] = tone[static_cast<std::size_t>((i + 64 - d) % 64)];
            const auto shifted = dtft_probe(s, cfg, f);
            for (std::size_t i = 0; i < f.size(); ++i)
                CHECK(shifted.values[i] == doctest::Approx(base.values[i]).epsilon(1e-9).scale(1e-12));
        }
    }
    SUBCASE("truncated symbol matches the direct sum") {
        for (int m : {8, 32, 50}) {
            std::vector<Complex> cut(tone);
            for (int i = m; i < 64; ++i) cut[static_cast<std::size_t>(i)] = 0.0;
            for (double f : {3.0, 4.0, 5.5, -2.25}) {
                const double got = dtft_probe(cut, cfg, std::vector<double>{f}).values[0];
                CHECK(got == doctest::Approx(std::norm(oracles::naive_dtft(cut, f, 64))).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("measured interference") {
    SUBCASE("aligned interferer leaves integer bins clean") {
        ScenarioSpec sc = clean_scenario();
        sc.mismatch = MismatchModel::fixed(0.0);
        const auto s = measure_cbi(sc, integers(1, 8), 1);
        for (double v : s.values) CHECK(v < 1e-24);
    }
    SUBCASE("any mismatch inside the CP is also clean") {
        ScenarioSpec sc = clean_scenario();
        sc.mismatch = MismatchModel::fixed(11.0);
        const auto s = measure_cbi(sc, integers(1, 8), 3);
        for (double v : s.values) CHECK(v < 1e-24);
    }
    SUBCASE("uniform mismatch follows the closed form") {
        ScenarioSpec sc = clean_scenario();
        const auto f = integers(1, 8);
        const auto s = measure_cbi(sc, f, 2000);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = cbi_overall(f[i], sc.link1.subcarriers, 1.0, 64, 16);
            CHECK(std::abs(to_db(s.values[i]) - to_db(a)) < 0.4);
        }
    }
    SUBCASE("Rayleigh fading at the edge subcarrier") {
        ScenarioSpec sc = clean_scenario();
        sc.channel = ChannelModel::rayleigh();
        const auto s = measure_cbi(sc, std::vector<double>{1.0}, 4000);
        CHECK(std::abs(to_db(s.values[0]) + 9.1) < 0.4);
    }
}

TEST_CASE("waveform placement clips to the buffer") {
    std::vector<Complex> dst(10);
    std::vector<Complex> w(6, Complex(1, 0));
    add_waveform(dst, w, -3, Complex(2, 0), 0.0, 64);
    CHECK(dst[0] == Complex(2, 0));
    CHECK(dst[2] == Complex(2, 0));
    CHECK(dst[3] == Complex(0, 0));
    add_waveform(dst, w, 8, Complex(1, 0), 0.25, 64);
    CHECK(std::abs(dst[9] - std::polar(1.0, 2.0 * oracles::kPi * 0.25 * 9 / 64)) < 1e-15);
}
