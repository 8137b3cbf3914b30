#include "xband/sync.hpp"

#include "xband/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace xband {

Preamble make_preamble(const LinkSpec& link, const OfdmConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::vector<int> even;
    for (int k : link.subcarriers)
        if (k % 2 == 0) even.push_back(k);
    if (even.empty()) throw ConfigError("preamble needs at least one even subcarrier in the link's set");

    Preamble p;
    p.pn_scale = std::sqrt(link.power_per_subcarrier * static_cast<double>(link.subcarriers.size()) /
                           static_cast<double>(even.size()));
    p.freq = FreqSymbol(SubcarrierSet(even));
    Rng rng(mix64(seed));
    for (auto& v : p.freq.values) {
        const auto bits = rng();
        v = qpsk_point(bits & 1u, (bits >> 1) & 1u, 1.0) * p.pn_scale;
    }
    p.time = ofdm_modulate(p.freq, cfg);
    return p;
}

SubcarrierSet preamble_span(const LinkSpec& link) {
    int lo = 0, hi = 0;
    bool any = false;
    for (int k : link.subcarriers) {
        if (k % 2 != 0) continue;
        if (!any) lo = k;
        hi = k;
        any = true;
    }
    if (!any) throw ConfigError("link has no even subcarriers");
    return SubcarrierSet::range(lo, hi);
}

std::vector<Complex> design_multiband_filter(const SubcarrierSet& pass_set, const OfdmConfig& cfg,
                                             const FilterOptions& opts) {
    if (opts.taps < 1 || opts.taps % 2 == 0) throw ArgumentError("filter length must be odd");
    const int n = cfg.n_fft;
    const int c = opts.taps / 2;
    std::vector<Complex> h(static_cast<std::size_t>(opts.taps));
    if (static_cast<int>(pass_set.size()) >= n) {
        h[static_cast<std::size_t>(c)] = 1.0;
        return h;
    }

    // Band edges per contiguous run, merged where the margins overlap.
    std::vector<std::pair<double, double>> bands;
    const auto& idx = pass_set.indices();
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && idx[j + 1] == idx[j] + 1) ++j;
        const double lo = idx[i] - 0.5 - opts.margin;
        const double hi = idx[j] + 0.5 + opts.margin;
        if (!bands.empty() && lo <= bands.back().second)
            bands.back().second = hi;
        else
            bands.emplace_back(lo, hi);
        i = j + 1;
    }

    constexpr double kPi = std::numbers::pi;
    for (int m = 0; m < opts.taps; ++m) {
        const int t = m - c;
        Complex ideal{};
        for (const auto& [lo, hi] : bands) {
            if (t == 0) {
                ideal += (hi - lo) / n;
            } else {
                ideal += (std::polar(1.0, 2.0 * kPi * hi * t / n) - std::polar(1.0, 2.0 * kPi * lo * t / n)) /
                         Complex(0.0, 2.0 * kPi * t);
            }
        }
        const double w = opts.taps == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * kPi * m / (opts.taps - 1));
        h[static_cast<std::size_t>(m)] = ideal * w;
    }
    return h;
}

Complex filter_response(std::span<const Complex> taps, double f, int n_fft) {
    const int c = static_cast<int>(taps.size()) / 2;
    Complex acc{};
    for (std::size_t m = 0; m < taps.size(); ++m)
        acc += taps[m] * std::polar(1.0, -2.0 * std::numbers::pi * f * (static_cast<int>(m) - c) / n_fft);
    return acc;
}

std::vector<Complex> multiband_filter(std::span<const Complex> samples, const SubcarrierSet& pass_set,
                                      const OfdmConfig& cfg, const FilterOptions& opts) {
    const auto h = design_multiband_filter(pass_set, cfg, opts);
    const long c = static_cast<long>(h.size()) / 2;
    const long len = static_cast<long>(samples.size());
    std::vector<Complex> y(samples.size());
    for (long n = 0; n < len; ++n) {
        Complex acc{};
        for (long m = 0; m < static_cast<long>(h.size()); ++m) {
            const long src = n + c - m;
            if (src >= 0 && src < len) acc += h[static_cast<std::size_t>(m)] * samples[static_cast<std::size_t>(src)];
        }
        y[static_cast<std::size_t>(n)] = acc;
    }
    return y;
}

Correlation delay_correlate(std::span<const Complex> samples, const OfdmConfig& cfg, double threshold) {
    const int n = cfg.n_fft;
    const int half = n / 2;
    const long len = static_cast<long>(samples.size());
    if (len < n + cfg.n_cp) throw ArgumentError("delay_correlate: need at least n_fft + n_cp samples");

    Correlation out;
    const long count = len - n + 1;
    out.metric.resize(static_cast<std::size_t>(count));
    std::vector<double> energy(static_cast<std::size_t>(count));
    for (long d = 0; d < count; ++d) {
        Complex p{};
        double r = 0.0;
        for (int i = 0; i < half; ++i) {
            const Complex a = samples[static_cast<std::size_t>(d + i)];
            const Complex b = samples[static_cast<std::size_t>(d + i + half)];
            p += std::conj(a) * b;
            r += std::norm(b);
        }
        out.metric[static_cast<std::size_t>(d)] = r > 0.0 ? std::norm(p) / (r * r) : 0.0;
        energy[static_cast<std::size_t>(d)] = r;
    }
    // The metric is scale-free, so near-silent stretches (filter residue, edges) can
    // score high. Only offsets carrying a fair share of the average energy count.
    const double floor =
        kEnergyGate * std::accumulate(energy.begin(), energy.end(), 0.0) / static_cast<double>(count);
    auto hit = [&](long d) {
        const auto i = static_cast<std::size_t>(d);
        return energy[i] > 0.0 && energy[i] >= floor && out.metric[i] >= threshold;
    };
    // The first run above threshold lasting more than half the CP length is the preamble.
    // Later runs can come from the payload, whose narrowband spectrum also correlates
    // at lag N/2.
    long b = 0, e = -1;
    for (;;) {
        while (b < count && !hit(b)) ++b;
        if (b >= count) break;
        e = b;
        while (e + 1 < count && hit(e + 1)) ++e;
        if (e - b + 1 >= cfg.n_cp / 2 + 1) break;
        b = e + 1;
    }
    out.detected = b < count;
    if (!out.detected) {
        out.peak_index = static_cast<int>(std::max_element(out.metric.begin(), out.metric.end()) - out.metric.begin());
        return out;
    }
    // The preamble CP region starts at most N/2 samples after the first crossing.
    e = std::min<long>(e, b + half + cfg.n_cp);
    out.peak_index = static_cast<int>(std::max_element(out.metric.begin() + b, out.metric.begin() + e + 1) -
                                      out.metric.begin());

    // Plateau: the earliest (n_cp + 1)-sample window inside the run whose mean metric is
    // within kPlateauTolerance of the best one. Payload following the preamble keeps the
    // metric high, so later windows tie with the true plateau. Values above 1 only arise
    // from unequal half energies and are clipped.
    auto clipped = [&](long d) { return std::min(1.0, out.metric[static_cast<std::size_t>(d)]); };
    const long w = std::min<long>(cfg.n_cp + 1, e - b + 1);
    std::vector<double> mean;
    double sum = 0.0;
    for (long d = b; d < b + w; ++d) sum += clipped(d);
    mean.push_back(sum / static_cast<double>(w));
    for (long d = b + 1; d + w - 1 <= e; ++d) {
        sum += clipped(d + w - 1) - clipped(d - 1);
        mean.push_back(sum / static_cast<double>(w));
    }
    const double best = *std::max_element(mean.begin(), mean.end());
    long best_begin = b;
    while (mean[static_cast<std::size_t>(best_begin - b)] < best - kPlateauTolerance) ++best_begin;
    out.plateau_begin = static_cast<int>(best_begin);
    out.plateau_end = static_cast<int>(best_begin + w - 1);
    out.timing = (out.plateau_begin + out.plateau_end) / 2;
    out.frame_start = out.timing + cfg.n_cp / 2;
    return out;
}

std::optional<double> estimate_cfo(std::span<const Complex> samples, int start, const OfdmConfig& cfg) {
    const int half = cfg.n_fft / 2;
    if (start < 0 || static_cast<std::size_t>(start + cfg.n_fft) > samples.size())
        throw ArgumentError("estimate_cfo: window exceeds the sample buffer");
    Complex p{};
    for (int i = 0; i < half; ++i)
        p += std::conj(samples[static_cast<std::size_t>(start + i)]) * samples[static_cast<std::size_t>(start + i + half)];
    if (std::abs(p) == 0.0) return std::nullopt;
    // Phase advance over N/2 samples is pi * cfo.
    return std::arg(p) / std::numbers::pi;
}

SyncResult synchronize(std::span<const Complex> samples, const OfdmConfig& cfg) {
    SyncResult r;
    const auto corr = delay_correlate(samples, cfg);
    if (!corr.detected) return r;
    const int start = std::min(corr.timing, static_cast<int>(samples.size()) - cfg.n_fft);
    const auto cfo = estimate_cfo(samples, start, cfg);
    if (!cfo) return r;
    r.detected = true;
    r.frame_start = corr.frame_start;
    r.cfo_estimate = *cfo;
    return r;
}

}  // namespace xband
