// sync.hpp - preamble detection and fractional CFO estimation
//
// The preamble is one OFDM symbol carrying PN-QPSK on the even subcarriers of
// the link, which makes its body N/2-periodic. A delay correlator over two
// N/2 halves yields a plateau of length N_CP + 1 starting at the preamble's CP.

#pragma once

#include "xband/ofdm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace xband {

struct Preamble {
    FreqSymbol freq;     // even subcarriers of the link
    TimeSymbol time;     // CP + body
    double pn_scale = 1; // |value| of every occupied subcarrier
};

/// Same total power as one data symbol of `link`. Throws ConfigError without even subcarriers.
Preamble make_preamble(const LinkSpec& link, const OfdmConfig& cfg, std::uint64_t seed);

/// Contiguous span covering the preamble's occupied subcarriers.
SubcarrierSet preamble_span(const LinkSpec& link);

struct FilterOptions {
    int taps = 129;
    double margin = 0.25;  // band edges widened by this many subcarriers on each side
};

/// Hamming-windowed ideal multiband response (complex taps). A pass set covering all
/// subcarriers yields a unit impulse.
std::vector<Complex> design_multiband_filter(const SubcarrierSet& pass_set, const OfdmConfig& cfg,
                                             const FilterOptions& opts = {});

/// Linear-phase FIR filtering with the group delay removed (output aligned to input).
std::vector<Complex> multiband_filter(std::span<const Complex> samples, const SubcarrierSet& pass_set,
                                      const OfdmConfig& cfg, const FilterOptions& opts = {});

/// Magnitude response of `taps` at frequency f (subcarriers), about the filter centre.
Complex filter_response(std::span<const Complex> taps, double f, int n_fft);

struct Correlation {
    std::vector<double> metric;  // one value per start offset d in [0, len - N]
    int peak_index = -1;   // largest metric in the first run above threshold
    bool detected = false;
    int plateau_begin = -1;  // best (n_cp + 1)-sample window within that run
    int plateau_end = -1;
    int timing = -1;       // plateau midpoint
    int frame_start = -1;  // estimated start of the preamble body (after CP)
};

inline constexpr double kDetectionThreshold = 0.5;
/// Offsets whose second-half energy is below this fraction of the mean are not detections.
inline constexpr double kEnergyGate = 0.25;
inline constexpr double kPlateauTolerance = 0.02;

/// metric(d) = |sum_{n<N/2} conj(r(d+n)) r(d+n+N/2)|^2 / (sum_{n<N/2} |r(d+n+N/2)|^2)^2
Correlation delay_correlate(std::span<const Complex> samples, const OfdmConfig& cfg,
                            double threshold = kDetectionThreshold);

/// Fractional CFO (subcarriers) from the two halves starting at `start`:
/// arg(sum conj(r(n)) r(n + N/2)) / pi, range (-1, 1]. nullopt when the correlation vanishes.
std::optional<double> estimate_cfo(std::span<const Complex> samples, int start, const OfdmConfig& cfg);

struct SyncResult {
    bool detected = false;
    int frame_start = -1;
    double cfo_estimate = 0.0;
};

/// delay_correlate followed by estimate_cfo at the plateau midpoint.
SyncResult synchronize(std::span<const Complex> samples, const OfdmConfig& cfg);

}  // namespace xband
