// harness.hpp - Monte Carlo campaigns
//
// Every trial derives its randomness from (scenario.seed, trial index) only and
// writes into its own slot; slots are reduced in index order. Reports are
// therefore identical for any thread count.

#pragma once

#include "xband/channel.hpp"
#include "xband/mitigation.hpp"
#include "xband/report.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace xband {

enum class ExperimentKind {
    interference_strength,
    param_sweep,
    sync_error,
    ber,
    mitigation_compare,
    throughput,
    freq_offset_sensitivity,
};

const char* to_string(ExperimentKind kind);
/// Throws ConfigError for unknown names.
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::interference_strength;
    ScenarioSpec scenario;
    int n_trials = 10000;
    int packet_symbols = 32;
    int total_subcarriers = 16;  // throughput campaigns share this span between the links
    std::vector<double> p_r_db{0.0, 3.0, 6.0, 9.0};
    /// Rician K-factors for the BER campaign; infinity means non-fading.
    std::vector<double> k_factors{std::numeric_limits<double>::infinity(), 10.0, 1.0, 0.0};
    double ber_k_sweep_p_r_db = 9.0;
    bool ber_tie_channels = false;  // independent H_{1->2} and H_{2->2} in the BER campaign
    std::vector<double> eps_max{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> sensitivity_p_r_db{0.0, 9.0};
    double throughput_eps_max = 0.1;
    double overhead = 0.25;
    std::vector<int> extra_interferer_widths{4, 16};
    CscSelector selector = CscSelector::genie;
    bool sync_filter = true;
    int threads = 0;

    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);
bool overlaps(const Interval& a, const Interval& b);

// ---- packet engine ----------------------------------------------------------

struct PacketPlan {
    ScenarioSpec scenario;  // link sets already laid out
    MitigationScheme scheme1;
    MitigationScheme scheme2;
    int n_symbols = 32;
    CscSelector selector = CscSelector::genie;
};

struct PacketOutcome {
    std::vector<std::uint64_t> bits;    // per position in link 2's set
    std::vector<std::uint64_t> errors;  // per position in link 2's set
    std::uint64_t payload_bits = 0;
    std::uint64_t error_bits = 0;
    std::uint64_t overhead_bits = 0;
    std::uint64_t capacity_bits = 0;
    bool failed = false;  // numerical failure; counts are empty

    bool ok() const { return !failed && error_bits == 0; }
    std::uint64_t correct_bits() const { return payload_bits - error_bits; }
};

/// One packet of link 2 under interference from link 1, both coded per plan.
/// Perfect CSI equalization by h2; hard decisions.
PacketOutcome run_packet(const PacketPlan& plan, std::uint64_t trial_index);

/// Interferer-only spectrum seen in link 2's window, normalized by P1 and averaged.
/// CSC schemes use the genie window of the two victim windows (least interference on link 2's bins).
PowerSpectrum measure_scheme_spectrum(const ScenarioSpec& spec, const MitigationScheme& scheme1,
                                      std::span<const double> f_grid, int n_trials, int threads = 0);

// ---- campaigns ----------------------------------------------------------------

struct SyncTrial {
    bool detected = false;
    double error = 0.0;  // estimate - applied CFO
    int timing_error = 0;
};

struct SyncTrialOptions {
    bool interferer_on = true;
    bool filter = true;
};

SyncTrial run_sync_trial(const ScenarioSpec& spec, std::uint64_t trial_index, const SyncTrialOptions& opts);

CampaignReport run_interference_strength(const ExperimentSpec& spec);
CampaignReport run_param_sweep(const ExperimentSpec& spec);
CampaignReport run_sync_error(const ExperimentSpec& spec);
CampaignReport run_ber(const ExperimentSpec& spec);
CampaignReport run_mitigation_compare(const ExperimentSpec& spec);
CampaignReport run_throughput(const ExperimentSpec& spec);
CampaignReport run_freq_offset_sensitivity(const ExperimentSpec& spec);

CampaignReport run_experiment(const ExperimentSpec& spec);

// Layouts used by the throughput campaigns (total span split around a boundary).
struct ThroughputConfig {
    MitigationScheme::Kind kind = MitigationScheme::Kind::none;
    int param = 0;  // fgb: gap; isc: coded subcarriers per link (even); csc: coded subcarriers per link
};

std::string describe(const ThroughputConfig& c);
PacketPlan make_throughput_plan(const ScenarioSpec& base, int total_subcarriers, const ThroughputConfig& c,
                                int n_symbols, CscSelector selector);
std::vector<ThroughputConfig> throughput_candidates(MitigationScheme::Kind kind, int total_subcarriers);

}  // namespace xband
