// analytic.hpp - closed-form cross-band interference, signal/ICI, CIR and
// synchronization-error models.
//
// Frequencies f are in subcarrier units on the same signed axis as subcarrier
// indices. All kernels are N-periodic in (f - k) and are evaluated on the
// principal interval [-N/2, N/2); removable singularities at f - k = 0 (mod N)
// take their limit values.

#pragma once

#include "xband/ofdm.hpp"
#include "xband/spectrum.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace xband {

/// sin^2(pi x) / (N^2 sin^2(pi x / N)); 1 at x = 0 (mod N).
double dirichlet_power(double x, int n);

/// Overlap M with the earlier interferer symbol for a Case-B mismatch:
/// ceil(tau - n_cp) clamped to [1, N-1]. Throws ArgumentError outside (n_cp, n + n_cp).
int case_b_overlap(double tau_samples, int n, int n_cp);

/// Case A (tau <= N_CP) average interference; independent of tau.
double cbi_case_a(double f, const SubcarrierSet& omega1, double p1, int n);

/// Case B average interference at a given mismatch. Uses the integer overlap M;
/// with `continuous` set, M is replaced by tau - n_cp (the tau-continuous form).
double cbi_case_b_at_tau(double f, double tau_samples, const SubcarrierSet& omega1, double p1, int n, int n_cp,
                         bool continuous = false);

/// Case B averaged over tau in (N_CP, N + N_CP): sum (1 - sinc(2(f-k))) / (N^2 sin^2(pi(f-k)/N)).
double cbi_case_b_avg(double f, const SubcarrierSet& omega1, double p1, int n);

/// rho * case A + (1 - rho) * case B average.
double cbi_overall_rho(double f, const SubcarrierSet& omega1, double p1, int n, double rho);
/// cbi_overall_rho with rho = n_cp / (n + n_cp).
double cbi_overall(double f, const SubcarrierSet& omega1, double p1, int n, int n_cp);

PowerSpectrum evaluate_spectrum(std::span<const double> f_grid, const std::function<double(double)>& fn);

/// Mean of fn over 101 uniform points strictly inside (center - 0.5, center + 0.5).
double step_average(const std::function<double(double)>& fn, double center);

enum class SweepParam { L, rho, N };

struct SensitivityBase {
    int interferer_width = 8;  // L; interferer occupies {-L+1, ..., 0}
    double rho = 0.2;
    int n_fft = 64;
    double p1 = 1.0;
};

struct SweepResult {
    SweepParam param;
    std::vector<double> values;
    std::vector<PowerSpectrum> spectra;  // one per value, cbi_overall on f_grid
};

SweepResult param_sensitivity(SweepParam param, std::span<const double> values, const SensitivityBase& base,
                              std::span<const double> f_grid);

/// Average link-2 signal power spectrum (same kernel as Case A).
double signal_psd(double f, const SubcarrierSet& omega2, double p2, int n);

struct SigIci {
    double p_sig = 0.0;
    double p_ici = 0.0;
};

/// Splits signal_psd(l + delta_f) into the own-subcarrier part and the leakage from Omega2 \ {l}.
SigIci decompose_sig_ici(double delta_f, int l, const SubcarrierSet& omega2, double p2, int n);

/// sqrt(2) / (pi sqrt(M * SINR)), subcarrier units. SINR linear.
double sync_error_std(int m, double sinr);

/// (1/|Omega2|) sum_{l in Omega2} cbi(l + epsilon).
double mean_interference_power(const SubcarrierSet& omega2, const std::function<double(double)>& cbi, double epsilon);

/// P_SIG / (P_ICI + P_CBI); +infinity when the denominator is zero.
double cir(double p_sig, double p_ici, double p_cbi);

/// Power spectrum of an antipodal pair s(k-1) = a, s(k) = -a with |a|^2 = p1, tau = 0 (finite-N form).
double isc_pair_psd(double f, int k, double p1, int n);
/// Large-N form p1 * (sin(pi(f-k)) / (pi (f-k+1)(f-k)))^2.
double isc_pair_psd_approx(double f, int k, double p1);
/// Spectrum of unpaired subcarriers k-1 and k with independent data of power p1.
double unpaired_pair_psd(double f, int k, double p1, int n);

/// Spectrum of a CSC-coded subcarrier seen by any receiver: the Case-A kernel at k.
double csc_subcarrier_psd(double f, int k, double p1, int n);

struct GuardbandResult {
    bool achievable = false;
    double f_gb = 0.0;  // subcarriers
};

/// Smallest guardband (0.1 resolution, within [0, N/2]) whose CIR at the victim edge
/// subcarrier f = 1 + f_gb meets cir_min_db. ICI is neglected; P2 = 1, P1 = 10^(p_r/10).
GuardbandResult min_guardband(double cir_min_db, double p_r_db, const OfdmConfig& cfg, int interferer_width);

}  // namespace xband
