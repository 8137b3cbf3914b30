#include "xband/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace xband {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingular = 1e-9;

double principal(double x, int n) { return x - n * std::round(x / n); }

// 1 - sin(y)/y, with a series near zero to avoid cancellation.
double one_minus_sinc(double y) {
    if (std::abs(y) < 1e-3) {
        const double y2 = y * y;
        return y2 / 6.0 - y2 * y2 / 120.0 + y2 * y2 * y2 / 5040.0;
    }
    return 1.0 - std::sin(y) / y;
}

double case_b_term(double x, double m, int n) {
    x = principal(x, n);
    const double nd = n;
    if (std::abs(x) < kSingular) return (m * m + (nd - m) * (nd - m)) / (nd * nd);
    const double a = std::sin(m * kPi * x / nd);
    const double b = std::sin((nd - m) * kPi * x / nd);
    const double d = nd * std::sin(kPi * x / nd);
    return (a * a + b * b) / (d * d);
}

double case_b_avg_term(double x, int n) {
    x = principal(x, n);
    if (std::abs(x) < kSingular) return 2.0 / 3.0;
    const double d = n * std::sin(kPi * x / n);
    return one_minus_sinc(2.0 * kPi * x) / (d * d);
}

}  // namespace

double dirichlet_power(double x, int n) {
    x = principal(x, n);
    if (std::abs(x) < kSingular) return 1.0;
    const double num = std::sin(kPi * x);
    const double den = n * std::sin(kPi * x / n);
    return num * num / (den * den);
}

int case_b_overlap(double tau_samples, int n, int n_cp) {
    if (!(tau_samples > n_cp && tau_samples < n + n_cp))
        throw ArgumentError("Case B requires n_cp < tau < n + n_cp");
    const int m = static_cast<int>(std::ceil(tau_samples - n_cp));
    return std::clamp(m, 1, n - 1);
}

double cbi_case_a(double f, const SubcarrierSet& omega1, double p1, int n) {
    double s = 0.0;
    for (int k : omega1) s += dirichlet_power(f - k, n);
    return p1 * s;
}

double cbi_case_b_at_tau(double f, double tau_samples, const SubcarrierSet& omega1, double p1, int n, int n_cp,
                         bool continuous) {
    const int m_int = case_b_overlap(tau_samples, n, n_cp);
    const double m = continuous ? tau_samples - n_cp : static_cast<double>(m_int);
    double s = 0.0;
    for (int k : omega1) s += case_b_term(f - k, m, n);
    return p1 * s;
}

double cbi_case_b_avg(double f, const SubcarrierSet& omega1, double p1, int n) {
    double s = 0.0;
    for (int k : omega1) s += case_b_avg_term(f - k, n);
    return p1 * s;
}

double cbi_overall_rho(double f, const SubcarrierSet& omega1, double p1, int n, double rho) {
    return rho * cbi_case_a(f, omega1, p1, n) + (1.0 - rho) * cbi_case_b_avg(f, omega1, p1, n);
}

double cbi_overall(double f, const SubcarrierSet& omega1, double p1, int n, int n_cp) {
    return cbi_overall_rho(f, omega1, p1, n, static_cast<double>(n_cp) / (n + n_cp));
}

PowerSpectrum evaluate_spectrum(std::span<const double> f_grid, const std::function<double(double)>& fn) {
    PowerSpectrum out;
    out.f_grid.assign(f_grid.begin(), f_grid.end());
    out.values.reserve(f_grid.size());
    for (double f : f_grid) out.values.push_back(fn(f));
    return out;
}

double step_average(const std::function<double(double)>& fn, double center) {
    constexpr int kPoints = 101;
    double s = 0.0;
    for (int i = 1; i <= kPoints; ++i) s += fn(center - 0.5 + static_cast<double>(i) / (kPoints + 1));
    return s / kPoints;
}

SweepResult param_sensitivity(SweepParam param, std::span<const double> values, const SensitivityBase& base,
                              std::span<const double> f_grid) {
    SweepResult r{param, {values.begin(), values.end()}, {}};
    for (double v : values) {
        SensitivityBase b = base;
        switch (param) {
            case SweepParam::L:
                b.interferer_width = static_cast<int>(std::lround(v));
                break;
            case SweepParam::rho:
                b.rho = v;
                break;
            case SweepParam::N:
                b.n_fft = static_cast<int>(std::lround(v));
                break;
        }
        if (b.interferer_width < 1 || b.interferer_width > b.n_fft / 2)
            throw ArgumentError("interferer width must lie in [1, N/2]");
        if (!(b.rho >= 0.0 && b.rho < 1.0)) throw ArgumentError("rho must lie in [0, 1)");
        if (b.n_fft < 2 || (b.n_fft & (b.n_fft - 1)) != 0) throw ArgumentError("N must be a power of two");
        const auto omega1 = SubcarrierSet::range(-b.interferer_width + 1, 0);
        r.spectra.push_back(
            evaluate_spectrum(f_grid, [&](double f) { return cbi_overall_rho(f, omega1, b.p1, b.n_fft, b.rho); }));
    }
    return r;
}

double signal_psd(double f, const SubcarrierSet& omega2, double p2, int n) { return cbi_case_a(f, omega2, p2, n); }

SigIci decompose_sig_ici(double delta_f, int l, const SubcarrierSet& omega2, double p2, int n) {
    if (!omega2.contains(l)) throw ArgumentError("decompose_sig_ici: l must belong to Omega2");
    if (!(std::abs(delta_f) <= 0.5)) throw ArgumentError("decompose_sig_ici: |delta_f| must not exceed 0.5");
    const double f = l + delta_f;
    SigIci r;
    r.p_sig = p2 * dirichlet_power(delta_f, n);
    for (int k : omega2)
        if (k != l) r.p_ici += p2 * dirichlet_power(f - k, n);
    return r;
}

double sync_error_std(int m, double sinr) {
    if (m < 1) throw ArgumentError("sync_error_std: M must be >= 1");
    if (!(sinr > 0.0)) throw ArgumentError("sync_error_std: SINR must be positive");
    if (std::isinf(sinr)) return 0.0;
    return std::numbers::sqrt2 / (kPi * std::sqrt(m * sinr));
}

double mean_interference_power(const SubcarrierSet& omega2, const std::function<double(double)>& cbi, double epsilon) {
    double s = 0.0;
    for (int l : omega2) s += cbi(l + epsilon);
    return s / static_cast<double>(omega2.size());
}

double cir(double p_sig, double p_ici, double p_cbi) {
    const double den = p_ici + p_cbi;
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return p_sig / den;
}

double isc_pair_psd(double f, int k, double p1, int n) {
    // DTFT kernel of subcarrier j: D(f - j) e^{-i pi (f - j)(N-1)/N}, D the signed Dirichlet ratio.
    auto kernel = [n](double x) -> Complex {
        // (1/N) sum_n e^{-i 2 pi x n / N}, which is exactly 1 at x = 0 (mod N)
        if (std::abs(principal(x, n)) < kSingular) return {1.0, 0.0};
        const double d = std::sin(kPi * x) / (n * std::sin(kPi * x / n));
        return d * std::polar(1.0, -kPi * x * (n - 1) / n);
    };
    const Complex s = kernel(f - (k - 1)) - kernel(f - k);
    return p1 * std::norm(s);
}

double isc_pair_psd_approx(double f, int k, double p1) {
    const double x = f - k;
    if (std::abs(x) < kSingular || std::abs(x + 1.0) < kSingular) return p1;
    const double v = std::sin(kPi * x) / (kPi * (x + 1.0) * x);
    return p1 * v * v;
}

double unpaired_pair_psd(double f, int k, double p1, int n) {
    return p1 * (dirichlet_power(f - (k - 1), n) + dirichlet_power(f - k, n));
}

double csc_subcarrier_psd(double f, int k, double p1, int n) { return p1 * dirichlet_power(f - k, n); }

GuardbandResult min_guardband(double cir_min_db, double p_r_db, const OfdmConfig& cfg, int interferer_width) {
    cfg.validate();
    if (interferer_width < 1 || interferer_width > cfg.n_fft / 2)
        throw ArgumentError("interferer width must lie in [1, N/2]");
    const auto omega1 = SubcarrierSet::range(-interferer_width + 1, 0);
    const double p1 = from_db(p_r_db);
    const double need = from_db(cir_min_db);
    const int steps = cfg.n_fft / 2 * 10;
    for (int i = 0; i <= steps; ++i) {
        const double g = i / 10.0;
        const double p_cbi = cbi_overall(1.0 + g, omega1, p1, cfg.n_fft, cfg.n_cp);
        if (cir(1.0, 0.0, p_cbi) >= need) return {true, g};
    }
    return {false, 0.0};
}

}  // namespace xband
