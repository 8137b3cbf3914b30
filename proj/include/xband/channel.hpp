// channel.hpp - two-link waveform simulation seen at link 2's receiver
//
// Link 2 (signal) frames are sample-aligned at the receiver: symbol j occupies
// [j*L, (j+1)*L) with L = n_fft + n_cp, and its DFT window is [j*L + n_cp, (j+1)*L).
// Link 1 (interferer) is delayed by the realized mismatch tau: its stream starts at
// tau - kInterfererLead*L so every victim window is covered, rotated by
// e^{-i 2 pi eps a / N} (a = absolute sample index) and scaled by its channel gain.
// Positive eps thus moves the interferer away from link 2: victim subcarrier l
// sees it at separation l + eps.

#pragma once

#include "xband/ofdm.hpp"
#include "xband/parallel.hpp"
#include "xband/spectrum.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace xband {

/// Interferer symbols generated ahead of the first victim symbol. Even, so that
/// two-symbol coding groups of the interferer start at tau + 2*m*L.
inline constexpr int kInterfererLead = 2;

struct MismatchModel {
    enum class Mode { fixed, uniform };
    Mode mode = Mode::uniform;
    double tau_samples = 0.0;  // fixed mode only

    static MismatchModel fixed(double tau) { return {Mode::fixed, tau}; }
    static MismatchModel uniform() { return {Mode::uniform, 0.0}; }
    void validate(const OfdmConfig& cfg) const;
};

struct FreqOffsetModel {
    enum class Mode { fixed, uniform };
    Mode mode = Mode::fixed;
    double value = 0.0;  // epsilon (fixed) or epsilon_max (uniform), subcarriers

    static FreqOffsetModel fixed(double eps) { return {Mode::fixed, eps}; }
    static FreqOffsetModel uniform(double eps_max) { return {Mode::uniform, eps_max}; }
    void validate() const;
};

struct ChannelModel {
    enum class Kind { non_fading, rician };
    Kind kind = Kind::non_fading;
    double k_factor = 0.0;
    bool tie_channels = true;  // H_{1->2} = H_{2->2}

    static ChannelModel non_fading() { return {Kind::non_fading, 0.0, true}; }
    static ChannelModel rician(double k, bool tie = true) { return {Kind::rician, k, tie}; }
    static ChannelModel rayleigh(bool tie = true) { return rician(0.0, tie); }
    void validate() const;
};

struct ScenarioSpec {
    OfdmConfig cfg;
    LinkSpec link1{SubcarrierSet::range(-7, 0), 1.0, LinkRole::interferer};
    LinkSpec link2{SubcarrierSet::range(1, 8), 1.0, LinkRole::signal};
    MismatchModel mismatch;
    FreqOffsetModel freq_offset;
    ChannelModel channel;
    double noise_power_per_subcarrier = 1e-4;  // -40 dB relative to unit signal power
    std::uint64_t seed = 1;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
    /// p_r = P1 / P2 in dB.
    double power_ratio_db() const { return to_db(link1.power_per_subcarrier / link2.power_per_subcarrier); }
};

/// Random quantities realized for one trial.
struct TrialDraw {
    double tau = 0.0;      // continuous draw, samples
    int tau_samples = 0;   // rounded to the nearest sample, reduced modulo L
    double epsilon = 0.0;  // inter-link offset, subcarriers
    Complex h1{1.0, 0.0};  // H_{1->2}
    Complex h2{1.0, 0.0};  // H_{2->2}
    std::uint64_t trial_seed = 0;

    /// Generator for payload data of this trial (independent of the draw itself).
    Rng data_rng() const;
    Rng noise_rng() const;
};

struct ReceivedFrame {
    std::vector<Complex> samples;       // link1 + link2 + noise
    std::vector<Complex> interference;  // link1 component alone
    TrialDraw meta;
    std::vector<FreqSymbol> link1_symbols;
    std::vector<FreqSymbol> link2_symbols;
    int n_symbols = 0;

    /// CP-stripped DFT window of victim symbol j.
    std::span<const Complex> window(int j, const OfdmConfig& cfg) const;
    std::span<const Complex> interference_window(int j, const OfdmConfig& cfg) const;
};

/// Complex flat-fading coefficient with E|h|^2 = 1.
Complex draw_channel_coefficient(const ChannelModel& model, Rng& rng);

/// Realizes tau, epsilon and channel gains for trial `trial_index`; deterministic in (spec.seed, trial_index).
TrialDraw draw_trial(const ScenarioSpec& spec, std::uint64_t trial_index);

/// Random QPSK symbol on `link` drawn from rng.
FreqSymbol random_symbol(const LinkSpec& link, Rng& rng);

/// Modulates and concatenates a symbol stream (CP included).
std::vector<Complex> modulate_stream(const std::vector<FreqSymbol>& stream, const OfdmConfig& cfg);

/// dst[start + i] += gain * e^{i 2 pi eps (start + i) / n_fft} * waveform[i], clipped to dst.
void add_waveform(std::span<Complex> dst, std::span<const Complex> waveform, long start, Complex gain,
                  double eps, int n_fft);

/// Adds circular complex Gaussian noise whose per-subcarrier (DFT-domain) power is `noise_per_subcarrier`.
void add_awgn(std::span<Complex> dst, double noise_per_subcarrier, int n_fft, Rng& rng);

/// Builds the received frame from explicit symbol streams. link1_stream must hold
/// n_symbols + kInterfererLead symbols; an empty link2_stream means link 2 is silent.
ReceivedFrame synthesize_frame(const ScenarioSpec& spec, const TrialDraw& draw, std::vector<FreqSymbol> link1_stream,
                               std::vector<FreqSymbol> link2_stream, int n_symbols);

/// Random QPSK traffic on both links.
ReceivedFrame realize_trial(const ScenarioSpec& spec, int n_symbols, std::uint64_t trial_index);

/// |sum_{n<N} x(n) e^{-i 2 pi f n / N}|^2 for every f in f_grid.
PowerSpectrum dtft_probe(std::span<const Complex> samples, const OfdmConfig& cfg, std::span<const double> f_grid);

struct ProbeOptions {
    bool interferer_on = true;  // false: both links silent, only noise reaches the probe
    bool normalize = true;      // divide by P1
    int threads = 0;
};

/// Spectrum of link 2's first DFT window with link 2 silent, averaged over n_trials.
/// Includes receiver noise at spec.noise_power_per_subcarrier.
PowerSpectrum measure_spectrum(const ScenarioSpec& spec, std::span<const double> f_grid, int n_trials,
                               const ProbeOptions& opts);

/// Average cross-band interference spectrum (interferer on, link 2 silent).
PowerSpectrum measure_cbi(const ScenarioSpec& spec, std::span<const double> f_grid, int n_trials,
                          bool normalize = true, int threads = 0);

}  // namespace xband
