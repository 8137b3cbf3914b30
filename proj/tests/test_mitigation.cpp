#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "xband/analytic.hpp"
#include "xband/harness.hpp"
#include "xband/mitigation.hpp"

#include <random>

using namespace xband;

namespace {

const OfdmConfig kCfg;

FreqSymbol qpsk_on(const SubcarrierSet& set, std::mt19937_64& rng) {
    std::vector<Complex> v;
    for (std::size_t i = 0; i < set.size(); ++i) v.push_back(qpsk_point(rng() & 1u, rng() & 1u, 1.0));
    return FreqSymbol(set, v);
}

ScenarioSpec quiet() {
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

struct BerCount {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
};

BerCount packets(const PacketPlan& plan, int n) {
    BerCount c;
    for (int t = 0; t < n; ++t) {
        const auto o = run_packet(plan, static_cast<std::uint64_t>(t));
        c.errors += o.error_bits;
        c.bits += o.payload_bits;
    }
    return c;
}

}  // namespace

TEST_CASE("guardband allocation") {
    auto [a, b] = fgb_allocate(16, 0);
    CHECK(a == SubcarrierSet::range(-7, 0));
    CHECK(b == SubcarrierSet::range(1, 8));
    std::tie(a, b) = fgb_allocate(16, 2);
    CHECK(a.size() == 7u);
    CHECK(b.size() == 7u);
    CHECK(b.front() - a.back() == 3);
    std::tie(a, b) = fgb_allocate(16, 3);
    CHECK(a.size() + b.size() == 13u);
    CHECK(b.front() - a.back() == 4);
    CHECK_THROWS_AS(fgb_allocate(16, 16), ArgumentError);
    CHECK_THROWS_AS(fgb_allocate(16, -1), ArgumentError);
}

TEST_CASE("scheme validation") {
    const auto link = SubcarrierSet::range(-7, 0);
    CHECK_NOTHROW(MitigationScheme::isc({{-1, 0}, {-3, -2}}).validate(link));
    CHECK_THROWS_AS(MitigationScheme::isc({{-2, 0}}).validate(link), ArgumentError);
    CHECK_THROWS_AS(MitigationScheme::isc({{-1, 0}, {-2, -1}}).validate(link), ArgumentError);
    CHECK_THROWS_AS(MitigationScheme::isc({{0, 1}}).validate(link), ArgumentError);
    CHECK_THROWS_AS(MitigationScheme::csc(SubcarrierSet({0, 1})).validate(link), ArgumentError);
    CHECK(MitigationScheme::csc(SubcarrierSet({-1, 0})).overhead_slots_per_symbol() == 1.0);
    CHECK(edge_pairs(link, 2, true) == std::vector<SubcarrierPair>{{-1, 0}, {-3, -2}});
    CHECK(edge_pairs(SubcarrierSet::range(1, 8), 1, false) == std::vector<SubcarrierPair>{{1, 2}});
    CHECK_THROWS_AS(edge_pairs(link, 5, true), ArgumentError);
    CHECK(*edge_subset(link, 3, true) == SubcarrierSet::range(-2, 0));
    CHECK_FALSE(edge_subset(link, 0, true).has_value());
}

TEST_CASE("ISC coding") {
    std::mt19937_64 rng(3);
    const auto set = SubcarrierSet::range(1, 8);
    const std::vector<SubcarrierPair> pairs{{1, 2}, {5, 6}};
    const auto data = qpsk_on(set, rng);
    const auto coded = isc_encode(data, pairs);
    for (auto [lo, hi] : pairs) CHECK(coded.at(hi) == -coded.at(lo));
    CHECK(coded.at(3) == data.at(3));

    const auto back = isc_decode(coded, pairs);
    CHECK(back.support == SubcarrierSet({1, 3, 4, 5, 7, 8}));
    for (int k : back.support) CHECK(std::abs(back.at(k) - data.at(k)) < 1e-15);
    CHECK_THROWS_AS(isc_decode(coded, {{2, 4}}), ArgumentError);

    SUBCASE("difference combining halves the noise") {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        double single = 0.0, combined = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            FreqSymbol rx = coded;
            for (auto& v : rx.values) v += Complex(g(rng), g(rng));
            single += std::norm(rx.at(1) - coded.at(1));
            combined += std::norm(isc_decode(rx, pairs).at(1) - data.at(1));
        }
        CHECK(oracles::to_db(single / combined) == doctest::Approx(3.0103).epsilon(0.1 / 3.0));
    }
}

TEST_CASE("ISC spectra") {
    SUBCASE("aligned interferer: faster sidelobe decay") {
        // Subcarriers -1, 0 coded; probe three bins above the upper member.
        ScenarioSpec sc = quiet();
        sc.link1.subcarriers = SubcarrierSet::range(-1, 0);
        sc.mismatch = MismatchModel::fixed(0.0);
        const std::vector<double> f{3.5};
        const auto coded = measure_scheme_spectrum(sc, MitigationScheme::isc({{-1, 0}}), f, 400);
        const auto plain = measure_scheme_spectrum(sc, MitigationScheme::none(), f, 400);
        CHECK(oracles::to_db(plain.values[0] / coded.values[0]) > 6.0);
    }
    SUBCASE("uniform mismatch: little change") {
        ScenarioSpec sc = quiet();
        std::vector<double> f;
        for (int i = 10; i <= 80; ++i) f.push_back(i / 10.0);
        const auto plain = measure_scheme_spectrum(sc, MitigationScheme::none(), f, 2000);
        auto mean_gain = [&](int n_pairs) {
            const auto scheme = MitigationScheme::isc(edge_pairs(sc.link1.subcarriers, n_pairs, true));
            const auto coded = measure_scheme_spectrum(sc, scheme, f, 2000);
            double gain = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) gain += to_db(plain.values[i]) - to_db(coded.values[i]);
            return gain / static_cast<double>(f.size());
        };
        // Two edge pairs: the comparison layout at 25% overhead.
        CHECK(std::abs(mean_gain(2)) <= 1.0);
        CHECK(std::abs(mean_gain(4)) <= 3.0);
    }
}

TEST_CASE("CSC coding") {
    std::mt19937_64 rng(5);
    const auto set = SubcarrierSet::range(-7, 0);
    const std::pair<FreqSymbol, FreqSymbol> pair{qpsk_on(set, rng), qpsk_on(set, rng)};
    const auto coded = SubcarrierSet::range(-3, 0);

    OfdmConfig no_cp{64, 0};
    const auto plain = csc_encode(pair, coded, no_cp);
    for (int k : coded) CHECK(std::abs(plain.second.at(k) - plain.first.at(k)) < 1e-15);
    CHECK(plain.second.at(-5) == pair.second.at(-5));

    CHECK(csc_phase(0, kCfg) == Complex(1.0, 0.0));
    CHECK(std::abs(csc_phase(1, kCfg) - Complex(0.0, 1.0)) < 1e-15);

    // The coded pair is one continuous waveform: the second body continues the first.
    const auto enc = csc_encode(pair, set, kCfg);
    const auto t1 = ofdm_modulate(enc.first, kCfg), t2 = ofdm_modulate(enc.second, kCfg);
    std::vector<Complex> joined(t1.samples);
    joined.insert(joined.end(), t2.samples.begin(), t2.samples.end());
    const auto ref = oracles::naive_idft(set.indices(), enc.first.values, 64);
    for (int a = 0; a < 144; ++a) {
        const Complex expect = ref[static_cast<std::size_t>(((a - 16) % 64 + 64) % 64)];
        CHECK(std::abs(joined[static_cast<std::size_t>(a)] - expect) < 1e-14);
    }

    SUBCASE("decoding without interference") {
        const auto rx = csc_encode(pair, coded, kCfg);
        for (auto sel : {CscSelector::genie, CscSelector::energy_metric}) {
            CscDecodeOptions opt;
            opt.selector = sel;
            opt.interference_power = std::pair{0.0, 0.0};
            const auto out = csc_decode(rx, coded, kCfg, opt);
            for (int k : coded) CHECK(std::abs(out.at(k) - pair.first.at(k)) < 1e-14);
        }
        CHECK_THROWS_AS(csc_decode(rx, coded, kCfg, CscDecodeOptions{}), ArgumentError);
    }
    SUBCASE("selection takes the cleaner copy") {
        auto rx = csc_encode(pair, coded, kCfg);
        for (int k : coded) rx.first[k] += Complex(0.6, -0.6);
        CscDecodeOptions opt;
        opt.selector = CscSelector::genie;
        opt.interference_power = std::pair{1.0, 0.0};
        auto out = csc_decode(rx, coded, kCfg, opt);
        for (int k : coded) CHECK(std::abs(out.at(k) - pair.first.at(k)) < 1e-14);
        opt.selector = CscSelector::energy_metric;
        out = csc_decode(rx, coded, kCfg, opt);
        for (int k : coded) CHECK(std::abs(out.at(k) - pair.first.at(k)) < 1e-14);
    }
}

TEST_CASE("CSC spectra at integer separations") {
    ScenarioSpec sc = quiet();
    const auto scheme = MitigationScheme::csc(sc.link1.subcarriers);
    const auto f = integers(1, 8);
    for (double tau : {0.0, 9.0, 16.0, 30.0, 63.0, 79.0}) {
        sc.mismatch = MismatchModel::fixed(tau);
        const auto s = measure_scheme_spectrum(sc, scheme, f, 20);
        for (double v : s.values) CHECK(to_db(v) <= -60.0);
    }
}

TEST_CASE("selectors on coded packets") {
    ScenarioSpec base;
    base.freq_offset = FreqOffsetModel::uniform(0.1);
    for (double p_r : {0.0, 3.0, 6.0, 9.0}) {
        base.link1.power_per_subcarrier = from_db(p_r);
        const ThroughputConfig c{MitigationScheme::Kind::csc, 8};
        const auto g = packets(make_throughput_plan(base, 16, c, 32, CscSelector::genie), 200);
        const auto e = packets(make_throughput_plan(base, 16, c, 32, CscSelector::energy_metric), 200);
        CHECK(g.errors <= e.errors);
    }
}

TEST_CASE("CSC at half-subcarrier offset equals unmitigated BER") {
    ScenarioSpec base;
    base.freq_offset = FreqOffsetModel::fixed(0.5);
    for (double p_r : {6.0, 9.0}) {
        base.link1.power_per_subcarrier = from_db(p_r);
        const auto csc = packets(make_throughput_plan(base, 16, {MitigationScheme::Kind::csc, 8}, 32, CscSelector::genie), 500);
        const auto none = packets(make_throughput_plan(base, 16, {MitigationScheme::Kind::none, 0}, 32, CscSelector::genie), 500);
        const auto a = wilson_interval(csc.errors, csc.bits);
        const auto b = wilson_interval(none.errors, none.bits);
        INFO("p_r " << p_r << ": csc " << static_cast<double>(csc.errors) / csc.bits << " none "
                    << static_cast<double>(none.errors) / none.bits);
        CHECK(overlaps(a, b));
    }
}
