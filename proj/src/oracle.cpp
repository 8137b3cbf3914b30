#include "xband/oracle.hpp"

#include "xband/parallel.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace xband::oracle {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double window_psd(double f, int tau, const SubcarrierSet& omega, double p, int n, int n_cp, double eps) {
    const int frame = n + n_cp;
    double total = 0.0;
    for (int k : omega) {
        std::map<long, Complex> seg;  // per interferer symbol overlapping the window
        for (int i = 0; i < n; ++i) {
            const long a = n_cp + i;
            const long rel = a - tau;
            const long m = floor_div(rel, frame);
            const long loc = rel - m * frame;
            const Complex x = std::polar(1.0 / n, kTwoPi * k * static_cast<double>(loc - n_cp) / n) *
                              std::polar(1.0, -kTwoPi * eps * static_cast<double>(a) / n);
            seg[m] += x * std::polar(1.0, -kTwoPi * f * i / n);
        }
        for (const auto& [m, v] : seg) total += p * std::norm(v);
    }
    return total;
}

double window_psd_avg(double f, int tau_lo, int tau_hi, const SubcarrierSet& omega, double p, int n, int n_cp) {
    double s = 0.0;
    for (int t = tau_lo; t <= tau_hi; ++t) s += window_psd(f, t, omega, p, n, n_cp);
    return s / (tau_hi - tau_lo + 1);
}

double pair_psd(double f, int k, Complex a, Complex b, int n) {
    Complex acc{};
    for (int i = 0; i < n; ++i) {
        const Complex x = (a * std::polar(1.0, kTwoPi * (k - 1) * i / n) + b * std::polar(1.0, kTwoPi * k * i / n)) / double(n);
        acc += x * std::polar(1.0, -kTwoPi * f * i / n);
    }
    return std::norm(acc);
}

double csc_window_psd(double f, int k, double p, int n, int n_cp, int pair_start) {
    const int frame = n + n_cp;
    Complex acc{};
    for (int i = 0; i < n; ++i) {
        const int a = n_cp + i;
        const int rel = a - pair_start;
        if (rel < 0 || rel >= 2 * frame) continue;
        // First symbol: CP then body, phase referenced to its body start. The second symbol
        // carries the first's value times e^{i 2 pi k n_cp / n}.
        const int loc = rel < frame ? rel - n_cp : rel - frame - n_cp;
        const double extra = rel < frame ? 0.0 : static_cast<double>(n_cp);
        const Complex x = std::polar(std::sqrt(p) / n, kTwoPi * k * (loc + extra) / n);
        acc += x * std::polar(1.0, -kTwoPi * f * i / n);
    }
    return std::norm(acc);
}

SigIci sig_ici(double delta_f, int l, const SubcarrierSet& omega2, double p2, int n) {
    SigIci out;
    for (int k : omega2) {
        // Aligned symbol on k probed at l + delta_f.
        Complex acc{};
        for (int i = 0; i < n; ++i)
            acc += std::polar(1.0 / n, kTwoPi * k * i / n) * std::polar(1.0, -kTwoPi * (l + delta_f) * i / n);
        (k == l ? out.p_sig : out.p_ici) += p2 * std::norm(acc);
    }
    return out;
}

double cfo_estimator_std(const SubcarrierSet& omega2, double sinr, int n, int n_trials, std::uint64_t seed) {
    std::vector<int> even;
    for (int k : omega2)
        if (k % 2 == 0) even.push_back(k);
    const double p = static_cast<double>(omega2.size()) / static_cast<double>(even.size());
    const double noise_var = 1.0 / sinr / n;  // per sample, unit signal power per subcarrier
    Rng rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(noise_var / 2.0));
    std::uniform_int_distribution<int> q(0, 3);
    double s = 0.0, ss = 0.0;
    std::vector<Complex> r(static_cast<std::size_t>(n));
    for (int t = 0; t < n_trials; ++t) {
        std::fill(r.begin(), r.end(), Complex{});
        for (int k : even) {
            const Complex sym = std::polar(std::sqrt(p), std::numbers::pi / 4 + std::numbers::pi / 2 * q(rng));
            for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] += sym * std::polar(1.0 / n, kTwoPi * k * i / n);
        }
        for (auto& x : r) x += Complex(g(rng), g(rng));
        Complex c{};
        for (int i = 0; i < n / 2; ++i) c += std::conj(r[static_cast<std::size_t>(i)]) * r[static_cast<std::size_t>(i + n / 2)];
        const double e = std::arg(c) / std::numbers::pi;
        s += e;
        ss += e * e;
    }
    const double mean = s / n_trials;
    return std::sqrt(std::max(0.0, ss / n_trials - mean * mean));
}

}  // namespace xband::oracle
