#include "xband/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace xband {

void MismatchModel::validate(const OfdmConfig& cfg) const {
    if (mode == Mode::fixed && !(tau_samples >= 0.0 && tau_samples < cfg.frame_length()))
        throw ConfigError("fixed tau must lie in [0, N + N_CP)");
}

void FreqOffsetModel::validate() const {
    if (mode == Mode::fixed && !(std::abs(value) <= 0.5))
        throw ConfigError("|epsilon| must not exceed 0.5 subcarrier");
    if (mode == Mode::uniform && !(value >= 0.0 && value <= 0.5))
        throw ConfigError("epsilon_max must lie in [0, 0.5]");
}

void ChannelModel::validate() const {
    if (kind == Kind::rician && !(k_factor >= 0.0)) throw ConfigError("Rician K-factor must be non-negative");
}

void ScenarioSpec::validate() const {
    cfg.validate();
    link1.validate(cfg);
    link2.validate(cfg);
    if (!link1.subcarriers.disjoint(link2.subcarriers)) throw ConfigError("link subcarrier sets overlap");
    mismatch.validate(cfg);
    freq_offset.validate();
    channel.validate();
    if (!(noise_power_per_subcarrier >= 0.0)) throw ConfigError("noise power must be non-negative");
}

Rng TrialDraw::data_rng() const { return Rng(derive_seed(trial_seed, 1)); }
Rng TrialDraw::noise_rng() const { return Rng(derive_seed(trial_seed, 2)); }

Complex draw_channel_coefficient(const ChannelModel& model, Rng& rng) {
    if (model.kind == ChannelModel::Kind::non_fading) return {1.0, 0.0};
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const double k = model.k_factor;
    const Complex los = std::polar(std::sqrt(k / (k + 1.0)), phase(rng));
    const Complex scatter = std::sqrt(1.0 / (k + 1.0)) * Complex(gauss(rng), gauss(rng));
    return los + scatter;
}

TrialDraw draw_trial(const ScenarioSpec& spec, std::uint64_t trial_index) {
    TrialDraw d;
    d.trial_seed = derive_seed(spec.seed, trial_index);
    Rng rng(derive_seed(d.trial_seed, 0));
    const int frame = spec.cfg.frame_length();
    if (spec.mismatch.mode == MismatchModel::Mode::uniform) {
        d.tau = std::uniform_real_distribution<double>(0.0, frame)(rng);
    } else {
        d.tau = spec.mismatch.tau_samples;
    }
    d.tau_samples = static_cast<int>(std::lround(d.tau) % frame);
    if (spec.freq_offset.mode == FreqOffsetModel::Mode::uniform) {
        const double m = spec.freq_offset.value;
        d.epsilon = m > 0.0 ? std::uniform_real_distribution<double>(-m, m)(rng) : 0.0;
    } else {
        d.epsilon = spec.freq_offset.value;
    }
    d.h2 = draw_channel_coefficient(spec.channel, rng);
    d.h1 = spec.channel.tie_channels ? d.h2 : draw_channel_coefficient(spec.channel, rng);
    return d;
}

FreqSymbol random_symbol(const LinkSpec& link, Rng& rng) {
    FreqSymbol s(link.subcarriers);
    for (auto& v : s.values) {
        const auto bits = rng();
        v = qpsk_point(bits & 1u, (bits >> 1) & 1u, link.power_per_subcarrier);
    }
    return s;
}

std::vector<Complex> modulate_stream(const std::vector<FreqSymbol>& stream, const OfdmConfig& cfg) {
    std::vector<Complex> out;
    out.reserve(stream.size() * static_cast<std::size_t>(cfg.frame_length()));
    for (const auto& sym : stream) {
        const auto t = ofdm_modulate(sym, cfg);
        out.insert(out.end(), t.samples.begin(), t.samples.end());
    }
    return out;
}

void add_waveform(std::span<Complex> dst, std::span<const Complex> waveform, long start, Complex gain, double eps,
                  int n_fft) {
    const long n_dst = static_cast<long>(dst.size());
    const double w = 2.0 * std::numbers::pi * eps / n_fft;
    for (std::size_t i = 0; i < waveform.size(); ++i) {
        const long a = start + static_cast<long>(i);
        if (a < 0) continue;
        if (a >= n_dst) break;
        const Complex rot = eps == 0.0 ? Complex{1.0, 0.0} : std::polar(1.0, w * static_cast<double>(a));
        dst[static_cast<std::size_t>(a)] += gain * rot * waveform[i];
    }
}

void add_awgn(std::span<Complex> dst, double noise_per_subcarrier, int n_fft, Rng& rng) {
    if (noise_per_subcarrier <= 0.0) return;
    // DFT without 1/N scales per-sample variance by N.
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_per_subcarrier / n_fft / 2.0));
    for (auto& x : dst) x += Complex(gauss(rng), gauss(rng));
}

std::span<const Complex> ReceivedFrame::window(int j, const OfdmConfig& cfg) const {
    return std::span<const Complex>(samples).subspan(static_cast<std::size_t>(j * cfg.frame_length() + cfg.n_cp),
                                                     static_cast<std::size_t>(cfg.n_fft));
}

std::span<const Complex> ReceivedFrame::interference_window(int j, const OfdmConfig& cfg) const {
    return std::span<const Complex>(interference)
        .subspan(static_cast<std::size_t>(j * cfg.frame_length() + cfg.n_cp), static_cast<std::size_t>(cfg.n_fft));
}

ReceivedFrame synthesize_frame(const ScenarioSpec& spec, const TrialDraw& draw, std::vector<FreqSymbol> link1_stream,
                               std::vector<FreqSymbol> link2_stream, int n_symbols) {
    if (n_symbols < 1) throw ArgumentError("n_symbols must be >= 1");
    if (static_cast<int>(link1_stream.size()) != n_symbols + kInterfererLead)
        throw ArgumentError("interferer stream must hold n_symbols + " + std::to_string(kInterfererLead) + " symbols");
    if (!link2_stream.empty() && static_cast<int>(link2_stream.size()) != n_symbols)
        throw ArgumentError("signal stream must hold n_symbols symbols or be empty");
    const OfdmConfig& cfg = spec.cfg;
    const int frame = cfg.frame_length();
    const std::size_t len = static_cast<std::size_t>(n_symbols) * static_cast<std::size_t>(frame);

    ReceivedFrame rx;
    rx.meta = draw;
    rx.n_symbols = n_symbols;
    rx.interference.assign(len, Complex{});
    const auto w1 = modulate_stream(link1_stream, cfg);
    add_waveform(rx.interference, w1, static_cast<long>(draw.tau_samples) - static_cast<long>(kInterfererLead) * frame,
                 draw.h1, -draw.epsilon, cfg.n_fft);

    rx.samples = rx.interference;
    if (!link2_stream.empty()) {
        const auto w2 = modulate_stream(link2_stream, cfg);
        add_waveform(rx.samples, w2, 0, draw.h2, 0.0, cfg.n_fft);
    }
    Rng noise = draw.noise_rng();
    add_awgn(rx.samples, spec.noise_power_per_subcarrier, cfg.n_fft, noise);
    rx.link1_symbols = std::move(link1_stream);
    rx.link2_symbols = std::move(link2_stream);
    return rx;
}

ReceivedFrame realize_trial(const ScenarioSpec& spec, int n_symbols, std::uint64_t trial_index) {
    spec.validate();
    if (n_symbols < 1) throw ArgumentError("n_symbols must be >= 1");
    const TrialDraw draw = draw_trial(spec, trial_index);
    Rng data = draw.data_rng();
    std::vector<FreqSymbol> s1, s2;
    for (int j = 0; j < n_symbols + kInterfererLead; ++j) s1.push_back(random_symbol(spec.link1, data));
    for (int j = 0; j < n_symbols; ++j) s2.push_back(random_symbol(spec.link2, data));
    return synthesize_frame(spec, draw, std::move(s1), std::move(s2), n_symbols);
}

PowerSpectrum dtft_probe(std::span<const Complex> samples, const OfdmConfig& cfg, std::span<const double> f_grid) {
    const int n = cfg.n_fft;
    if (samples.size() != static_cast<std::size_t>(n))
        throw ArgumentError("dtft_probe: window must hold exactly n_fft samples");
    PowerSpectrum out;
    out.f_grid.assign(f_grid.begin(), f_grid.end());
    out.values.resize(f_grid.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        const double w = -2.0 * std::numbers::pi * f_grid[i] / n;
        Complex acc{};
        for (int m = 0; m < n; ++m) acc += samples[static_cast<std::size_t>(m)] * std::polar(1.0, w * m);
        out.values[i] = std::norm(acc);
    }
    return out;
}

PowerSpectrum measure_spectrum(const ScenarioSpec& spec, std::span<const double> f_grid, int n_trials,
                               const ProbeOptions& opts) {
    spec.validate();
    if (n_trials < 1) throw ArgumentError("n_trials must be >= 1");
    std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(n_trials));
    parallel_for(
        static_cast<std::size_t>(n_trials),
        [&](std::size_t t) {
            const TrialDraw draw = draw_trial(spec, t);
            Rng data = draw.data_rng();
            std::vector<FreqSymbol> s1;
            for (int j = 0; j < 1 + kInterfererLead; ++j) s1.push_back(random_symbol(spec.link1, data));
            ReceivedFrame rx = synthesize_frame(spec, draw, std::move(s1), {}, 1);
            if (!opts.interferer_on) {
                rx.samples.assign(rx.samples.size(), Complex{});
                Rng noise = draw.noise_rng();
                add_awgn(rx.samples, spec.noise_power_per_subcarrier, spec.cfg.n_fft, noise);
            }
            per_trial[t] = dtft_probe(rx.window(0, spec.cfg), spec.cfg, f_grid).values;
        },
        opts.threads);
    PowerSpectrum out;
    out.f_grid.assign(f_grid.begin(), f_grid.end());
    out.values.assign(f_grid.size(), 0.0);
    for (const auto& v : per_trial)
        for (std::size_t i = 0; i < v.size(); ++i) out.values[i] += v[i];
    const double scale = 1.0 / n_trials / (opts.normalize ? spec.link1.power_per_subcarrier : 1.0);
    for (auto& v : out.values) v *= scale;
    return out;
}

PowerSpectrum measure_cbi(const ScenarioSpec& spec, std::span<const double> f_grid, int n_trials, bool normalize,
                          int threads) {
    return measure_spectrum(spec, f_grid, n_trials, ProbeOptions{true, normalize, threads});
}

}  // namespace xband
