#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "xband/analytic.hpp"

#include <random>

using namespace xband;

namespace {

const SubcarrierSet kOmega1 = SubcarrierSet::range(-7, 0);
const SubcarrierSet kOmega2 = SubcarrierSet::range(1, 8);

double case_a_oracle(double f, const SubcarrierSet& omega, double p, int n) {
    double s = 0.0;
    for (int k : omega) s += p * oracles::tone_leakage(f, k, n);
    return s;
}

double case_b_oracle(double f, int m, const SubcarrierSet& omega, double p, int n) {
    double s = 0.0;
    for (int k : omega) s += p * oracles::two_segment_power(f, k, m, n);
    return s;
}

std::vector<double> test_grid() {
    std::vector<double> f;
    for (double x = -3.0; x <= 12.0; x += 0.25) f.push_back(x + 0.013);
    for (int k = 1; k <= 8; ++k) f.push_back(k);
    return f;
}

}  // namespace

TEST_CASE("Dirichlet power matches the explicit sum") {
    for (int n : {16, 64}) {
        for (double x : {0.0, 0.3, 1.0, 2.5, -3.75, 7.0, static_cast<double>(n), n + 0.5})
            CHECK(dirichlet_power(x, n) == doctest::Approx(oracles::tone_leakage(x, 0, n)).epsilon(1e-10).scale(1e-14));
    }
}

TEST_CASE("Case A") {
    CHECK(cbi_case_a(3.0, kOmega1, 1.0, 64) == doctest::Approx(0.0).scale(1e-14));
    CHECK(cbi_case_a(-4.0, kOmega1, 2.0, 64) == doctest::Approx(2.0).epsilon(1e-12));
    for (double f : test_grid())
        CHECK(cbi_case_a(f, kOmega1, 1.0, 64) == doctest::Approx(case_a_oracle(f, kOmega1, 1.0, 64)).epsilon(1e-9).scale(1e-14));
}

TEST_CASE("Case B at a fixed mismatch matches the two-segment sum") {
    for (int tau : {17, 24, 48, 79}) {
        const int m = tau - 16;
        for (double f : test_grid()) {
            const double got = cbi_case_b_at_tau(f, tau, kOmega1, 1.0, 64, 16);
            CHECK(got == doctest::Approx(case_b_oracle(f, m, kOmega1, 1.0, 64)).epsilon(1e-8).scale(1e-14));
        }
    }
    CHECK(case_b_overlap(16.5, 64, 16) == 1);
    CHECK(case_b_overlap(47.2, 64, 16) == 32);
    CHECK_THROWS_AS(case_b_overlap(16.0, 64, 16), ArgumentError);
    CHECK_THROWS_AS(case_b_overlap(80.0, 64, 16), ArgumentError);
}

TEST_CASE("Case B average is the mismatch average") {
    const int steps = 4000;
    for (double f : {1.0, 2.5, 4.0, 7.3}) {
        double acc = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double tau = 16.0 + 64.0 * (i + 0.5) / steps;
            acc += cbi_case_b_at_tau(f, tau, kOmega1, 1.0, 64, 16, true);
        }
        CHECK(acc / steps == doctest::Approx(cbi_case_b_avg(f, kOmega1, 1.0, 64)).epsilon(1e-3));
    }
}

TEST_CASE("Case B shape") {
    const SubcarrierSet one({0});
    for (double d : {0.4, 1.0, 2.7, 6.0})
        CHECK(cbi_case_b_avg(d, one, 1.0, 64) == doctest::Approx(cbi_case_b_avg(-d, one, 1.0, 64)).epsilon(1e-12));
    double prev = 1e300;
    for (int f = 1; f <= 12; ++f) {
        const double v = step_average([&](double x) { return cbi_case_b_avg(x, kOmega1, 1.0, 64); }, f);
        CHECK(v < prev);
        prev = v;
    }
    for (int f = 1; f <= 8; ++f) {
        const double b = step_average([&](double x) { return cbi_case_b_avg(x, kOmega1, 1.0, 64); }, f);
        const double a = step_average([&](double x) { return cbi_case_a(x, kOmega1, 1.0, 64); }, f);
        CHECK(std::abs(to_db(b) - to_db(a) - 3.0) <= 0.5);
    }
}

TEST_CASE("overall interference, default layout") {
    CHECK(std::abs(to_db(cbi_overall(1.0, kOmega1, 1.0, 64, 16)) + 9.1) <= 0.05);
    CHECK(std::abs(to_db(cbi_overall(2.0, kOmega1, 1.0, 64, 16)) + 13.5) <= 0.05);
    CHECK(std::abs(to_db(cbi_overall(8.0, kOmega1, 1.0, 64, 16)) + 22.1) <= 0.05);
    for (double f : test_grid()) {
        const double mix = 0.2 * cbi_case_a(f, kOmega1, 1.0, 64) + 0.8 * cbi_case_b_avg(f, kOmega1, 1.0, 64);
        CHECK(cbi_overall(f, kOmega1, 1.0, 64, 16) == doctest::Approx(mix).epsilon(1e-12));
        CHECK(cbi_overall(f, kOmega1, 3.0, 64, 16) == doctest::Approx(3.0 * cbi_overall(f, kOmega1, 1.0, 64, 16)));
    }
}

TEST_CASE("parameter sensitivity") {
    std::vector<double> f{1.0, 2.0, 3.0, 4.0};
    SensitivityBase base;
    const std::vector<double> rhos{0.0, 0.5};
    const auto r = param_sensitivity(SweepParam::rho, rhos, base, f);
    REQUIRE(r.spectra.size() == 2u);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(to_db(r.spectra[0].values[i]) - to_db(r.spectra[1].values[i]) - 3.0) <= 0.5);
    const std::vector<double> widths{2, 4, 8, 16};
    const auto l = param_sensitivity(SweepParam::L, widths, base, f);
    for (std::size_t j = 1; j < widths.size(); ++j)
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(l.spectra[j].values[i] >= l.spectra[j - 1].values[i]);
}

TEST_CASE("signal spectrum and its split") {
    CHECK(signal_psd(3.0, kOmega2, 2.0, 64) == doctest::Approx(2.0));
    CHECK(signal_psd(12.0, kOmega2, 2.0, 64) == doctest::Approx(0.0).scale(1e-14));
    CHECK(signal_psd(4.5, kOmega2, 1.0, 64) == doctest::Approx(case_a_oracle(4.5, kOmega2, 1.0, 64)).epsilon(1e-10));

    const auto zero = decompose_sig_ici(0.0, 4, kOmega2, 1.5, 64);
    CHECK(zero.p_sig == doctest::Approx(1.5));
    CHECK(zero.p_ici == doctest::Approx(0.0).scale(1e-14));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 50; ++i) {
        const double df = u(rng);
        const int l = 1 + static_cast<int>(rng() % 8);
        const auto s = decompose_sig_ici(df, l, kOmega2, 1.0, 64);
        CHECK(s.p_sig + s.p_ici == doctest::Approx(signal_psd(l + df, kOmega2, 1.0, 64)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(decompose_sig_ici(0.1, 9, kOmega2, 1.0, 64), ArgumentError);
}

TEST_CASE("synchronization error model") {
    CHECK(std::abs(sync_error_std(8, std::pow(10.0, 1.51)) - 0.028) <= 0.001);
    CHECK(sync_error_std(32, 10.0) == doctest::Approx(sync_error_std(8, 10.0) / 2));
    CHECK(sync_error_std(8, 1e30) < 1e-15);
}

TEST_CASE("mean interference over the victim set") {
    auto cbi = [](double f) { return cbi_overall(f, kOmega1, 1.0, 64, 16); };
    CHECK(std::abs(to_db(mean_interference_power(kOmega2, cbi, 0.0)) + 15.1) <= 0.1);
    CHECK(mean_interference_power(kOmega2, [](double) { return 0.0; }, 0.0) == 0.0);
    double ref = 0.0;
    for (int l = 1; l <= 8; ++l) ref += cbi(l + 0.25) / 8.0;
    CHECK(mean_interference_power(kOmega2, cbi, 0.25) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("carrier to interference ratio") {
    CHECK(cir(0.5, 0.0, 0.5) == doctest::Approx(1.0));
    CHECK(std::isinf(cir(1.0, 0.0, 0.0)));
    CHECK(cir(1.0, 0.01, 0.1) > cir(1.0, 0.01, 0.2));
    const double c = to_db(cir(from_db(-0.1), 0.0, from_db(-9.1)));
    CHECK(c >= 8.9);
    CHECK(c <= 9.05);
}

TEST_CASE("antipodal pair spectrum") {
    const int n = 64, k = 3;
    for (int f = -10; f <= 20; ++f)
        if (f != k && f != k - 1) CHECK(isc_pair_psd(f, k, 1.0, n) == doctest::Approx(0.0).scale(1e-14));
    const auto x = oracles::naive_idft({k - 1, k}, {Complex(1, 0), Complex(-1, 0)}, n);
    for (double f = -6.0; f < 14.0; f += 0.31) {
        CHECK(isc_pair_psd(f, k, 1.0, n) == doctest::Approx(std::norm(oracles::naive_dtft(x, f, n))).epsilon(1e-9).scale(1e-14));
        if (std::abs(f - k) >= 2.0) CHECK(isc_pair_psd(f, k, 1.0, n) < unpaired_pair_psd(f, k, 1.0, n));
    }
    // Envelope slopes from half-integer peaks one decade apart, large N.
    const int big = 8192;
    const double near = 10.5, far = 100.5;
    const double isc_slope = to_db(isc_pair_psd(k + far, k, 1.0, big)) - to_db(isc_pair_psd(k + near, k, 1.0, big));
    const double raw_slope = to_db(unpaired_pair_psd(k + far, k, 1.0, big)) - to_db(unpaired_pair_psd(k + near, k, 1.0, big));
    CHECK(isc_slope == doctest::Approx(-40.0).epsilon(3.0 / 40.0));
    CHECK(raw_slope == doctest::Approx(-20.0).epsilon(3.0 / 20.0));
    CHECK(isc_pair_psd_approx(k + 7.5, k, 1.0) == doctest::Approx(isc_pair_psd(k + 7.5, k, 1.0, big)).epsilon(0.01));
}

TEST_CASE("CSC subcarrier spectrum") {
    const SubcarrierSet one({0});
    for (double f = -5.0; f < 9.0; f += 0.17)
        CHECK(csc_subcarrier_psd(f, 0, 2.0, 64) == doctest::Approx(cbi_case_a(f, one, 2.0, 64)).epsilon(1e-12).scale(1e-14));
    for (int f = 1; f <= 8; ++f) CHECK(csc_subcarrier_psd(f, 0, 1.0, 64) < 1e-28);
    const double worst = csc_subcarrier_psd(0.5 + 1.0, 0, 1.0, 64);
    const double plain = cbi_overall(1.5, one, 1.0, 64, 16);
    CHECK(std::abs(to_db(worst) - to_db(plain)) < 3.0);
}

TEST_CASE("minimum guardband") {
    OfdmConfig cfg;
    const auto a = min_guardband(10.0, 6.0, cfg, 8);
    CHECK(a.achievable);
    CHECK(std::abs(a.f_gb - 2.0) <= 0.2);
    CHECK(min_guardband(5.0, 0.0, cfg, 8).f_gb == 0.0);
    CHECK(std::abs(min_guardband(15.0, 9.0, cfg, 8).f_gb - 10.0) <= 0.2);
    CHECK_FALSE(min_guardband(80.0, 9.0, cfg, 8).achievable);
    CHECK_THROWS_AS(min_guardband(10.0, 0.0, cfg, 0), ArgumentError);
}
