// oracle.hpp - brute-force reference evaluators built from explicit time-domain
// waveforms. They share no code with the closed forms in analytic.hpp and are
// used to cross-check them.

#pragma once

#include "xband/analytic.hpp"

#include <cstdint>

namespace xband::oracle {

/// Expected |DTFT|^2 of link 2's DFT window (samples [n_cp, n_cp + n)) when independent
/// unit-energy data of power p is sent on `omega` by a transmitter whose symbols start at
/// integer offset tau + m (n + n_cp), rotated by e^{-i 2 pi eps a / n}.
double window_psd(double f, int tau, const SubcarrierSet& omega, double p, int n, int n_cp, double eps = 0.0);

/// window_psd averaged over every integer tau in [tau_lo, tau_hi].
double window_psd_avg(double f, int tau_lo, int tau_hi, const SubcarrierSet& omega, double p, int n, int n_cp);

/// |DTFT|^2 of one aligned symbol carrying `a` on k-1 and `b` on k.
double pair_psd(double f, int k, Complex a, Complex b, int n);

/// |DTFT|^2 of a window inside a CSC-coded pair of symbols of subcarrier k with |s|^2 = p.
/// The pair starts at absolute sample `pair_start`; the window is [n_cp, n_cp + n).
double csc_window_psd(double f, int k, double p, int n, int n_cp, int pair_start);

/// Own-subcarrier and leakage power of link 2 at f = l + delta_f from a CFO-rotated symbol.
SigIci sig_ici(double delta_f, int l, const SubcarrierSet& omega2, double p2, int n);

/// Monte Carlo std of the half-repetition CFO estimator: random PN on the even subcarriers
/// of `omega2` (same total power as |omega2| unit subcarriers), AWGN at the given SINR.
double cfo_estimator_std(const SubcarrierSet& omega2, double sinr, int n, int n_trials, std::uint64_t seed);

}  // namespace xband::oracle
