#include "xband/harness.hpp"

#include "xband/analytic.hpp"
#include "xband/csv.hpp"
#include "xband/sync.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace xband {

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::interference_strength: return "interference_strength";
        case ExperimentKind::param_sweep: return "param_sweep";
        case ExperimentKind::sync_error: return "sync_error";
        case ExperimentKind::ber: return "ber";
        case ExperimentKind::mitigation_compare: return "mitigation_compare";
        case ExperimentKind::throughput: return "throughput";
        case ExperimentKind::freq_offset_sensitivity: return "freq_offset_sensitivity";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
    for (auto k : {ExperimentKind::interference_strength, ExperimentKind::param_sweep, ExperimentKind::sync_error,
                   ExperimentKind::ber, ExperimentKind::mitigation_compare, ExperimentKind::throughput,
                   ExperimentKind::freq_offset_sensitivity})
        if (name == to_string(k)) return k;
    throw ConfigError("unknown experiment '" + name + "'");
}

void ExperimentSpec::validate() const {
    scenario.validate();
    if (n_trials < 1) throw ConfigError("trials must be >= 1");
    if (packet_symbols < 1) throw ConfigError("packet_symbols must be >= 1");
    if (total_subcarriers < 2 || total_subcarriers > scenario.cfg.n_fft)
        throw ConfigError("total_subcarriers must lie in [2, n_fft]");
    if (p_r_db.empty()) throw ConfigError("p_r_list must not be empty");
    if (k_factors.empty()) throw ConfigError("k_list must not be empty");
    for (double k : k_factors)
        if (!(k >= 0.0)) throw ConfigError("k_list entries must be non-negative");
    if (eps_max.empty()) throw ConfigError("eps_max_list must not be empty");
    for (double e : eps_max)
        if (!(e >= 0.0 && e <= 0.5)) throw ConfigError("eps_max_list entries must lie in [0, 0.5]");
    if (sensitivity_p_r_db.empty()) throw ConfigError("sensitivity_p_r_list must not be empty");
    if (!(throughput_eps_max >= 0.0 && throughput_eps_max <= 0.5))
        throw ConfigError("throughput_eps_max must lie in [0, 0.5]");
    if (!(overhead > 0.0 && overhead <= 0.5)) throw ConfigError("overhead must lie in (0, 0.5]");
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool overlaps(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

namespace {

ScenarioSpec with_power_ratio(ScenarioSpec s, double p_r_db) {
    s.link1.power_per_subcarrier = s.link2.power_per_subcarrier * from_db(p_r_db);
    return s;
}

void apply_scheme(std::vector<FreqSymbol>& stream, const MitigationScheme& s, const OfdmConfig& cfg) {
    if (s.kind == MitigationScheme::Kind::isc) {
        for (auto& sym : stream) sym = isc_encode(sym, s.pairs);
    } else if (s.kind == MitigationScheme::Kind::csc) {
        for (std::size_t j = 0; j + 1 < stream.size(); j += 2)
            stream[j + 1] = csc_encode({stream[j], stream[j + 1]}, *s.coded, cfg).second;
    }
}

std::vector<FreqSymbol> coded_stream(const LinkSpec& link, const MitigationScheme& s, int n, Rng& rng,
                                     const OfdmConfig& cfg) {
    std::vector<FreqSymbol> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out.push_back(random_symbol(link, rng));
    apply_scheme(out, s, cfg);
    return out;
}

double window_energy(std::span<const Complex> window, const OfdmConfig& cfg, const SubcarrierSet& set) {
    const auto y = demodulate_window(window, cfg, set);
    double e = 0.0;
    for (const auto& v : y.values) e += std::norm(v);
    return e;
}

void add_scenario_meta(CampaignReport& r, const ExperimentSpec& spec) {
    const auto& s = spec.scenario;
    auto set_str = [](const SubcarrierSet& set) {
        std::ostringstream os;
        for (std::size_t i = 0; i < set.size(); ++i) os << (i ? " " : "") << set.indices()[i];
        return os.str();
    };
    r.set_meta("experiment", to_string(spec.kind));
    r.set_meta("seed", std::to_string(s.seed));
    r.set_meta("trials", std::to_string(spec.n_trials));
    r.set_meta("n_fft", std::to_string(s.cfg.n_fft));
    r.set_meta("n_cp", std::to_string(s.cfg.n_cp));
    r.set_meta("subcarrier_spacing_hz", format_double(s.cfg.subcarrier_spacing_hz));
    r.set_meta("modulation", "qpsk");
    r.set_meta("interferer_subcarriers", set_str(s.link1.subcarriers));
    r.set_meta("signal_subcarriers", set_str(s.link2.subcarriers));
    r.set_meta("p1", format_double(s.link1.power_per_subcarrier));
    r.set_meta("p2", format_double(s.link2.power_per_subcarrier));
    r.set_meta("mismatch", s.mismatch.mode == MismatchModel::Mode::uniform
                               ? std::string("uniform")
                               : "fixed " + format_double(s.mismatch.tau_samples));
    r.set_meta("epsilon", (s.freq_offset.mode == FreqOffsetModel::Mode::uniform ? "uniform " : "fixed ") +
                              format_double(s.freq_offset.value));
    r.set_meta("channel", s.channel.kind == ChannelModel::Kind::non_fading
                              ? std::string("non_fading")
                              : "rician k=" + format_double(s.channel.k_factor) +
                                    (s.channel.tie_channels ? " tied" : " independent"));
    r.set_meta("noise_power_per_subcarrier", format_double(s.noise_power_per_subcarrier));
    r.set_meta("packet_symbols", std::to_string(spec.packet_symbols));
}

void finish_meta(CampaignReport& r) { r.set_meta("failed_trials", std::to_string(r.failed_trials)); }

void add_db_lin(Table& t, const std::string& stem) {
    t.add_column(stem + "_db", "dB");
    t.add_column(stem + "_lin", "linear");
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const int n = static_cast<int>(std::lround((hi - lo) / step));
    for (int i = 0; i <= n; ++i) g.push_back(lo + i * step);
    return g;
}

}  // namespace

// ---- packet engine ----------------------------------------------------------

PacketOutcome run_packet(const PacketPlan& plan, std::uint64_t trial_index) {
    const ScenarioSpec& sc = plan.scenario;
    const OfdmConfig& cfg = sc.cfg;
    const SubcarrierSet& omega2 = sc.link2.subcarriers;
    plan.scheme1.validate(sc.link1.subcarriers);
    plan.scheme2.validate(omega2);

    const TrialDraw draw = draw_trial(sc, trial_index);
    Rng data = draw.data_rng();
    const int n = plan.n_symbols;
    auto s1 = coded_stream(sc.link1, plan.scheme1, n + kInterfererLead, data, cfg);
    auto s2 = coded_stream(sc.link2, plan.scheme2, n, data, cfg);
    const ReceivedFrame rx = synthesize_frame(sc, draw, std::move(s1), std::move(s2), n);
    const auto& tx = rx.link2_symbols;

    PacketOutcome out;
    out.bits.assign(omega2.size(), 0);
    out.errors.assign(omega2.size(), 0);
    const int bps = bits_per_symbol(cfg.modulation);
    out.capacity_bits = static_cast<std::uint64_t>(n) * omega2.size() * static_cast<std::uint64_t>(bps);

    const Complex eq = 1.0 / draw.h2;
    std::vector<FreqSymbol> y(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        y[static_cast<std::size_t>(j)] = demodulate_window(rx.window(j, cfg), cfg, omega2);
        for (auto& v : y[static_cast<std::size_t>(j)].values) {
            v *= eq;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                PacketOutcome failed;
                failed.failed = true;
                return failed;
            }
        }
    }

    auto count = [&](int k, Complex sent, Complex est) {
        std::uint8_t a0, a1, b0, b1;
        qpsk_decide(sent, a0, a1);
        qpsk_decide(est, b0, b1);
        const auto pos = static_cast<std::size_t>(omega2.position(k));
        out.bits[pos] += static_cast<std::uint64_t>(bps);
        out.errors[pos] += static_cast<std::uint64_t>((a0 != b0) + (a1 != b1));
    };

    const auto& sch = plan.scheme2;
    if (sch.kind == MitigationScheme::Kind::isc) {
        for (int j = 0; j < n; ++j) {
            const auto dec = isc_decode(y[static_cast<std::size_t>(j)], sch.pairs);
            for (int k : dec.support) count(k, tx[static_cast<std::size_t>(j)].at(k), dec.at(k));
        }
        out.overhead_bits = static_cast<std::uint64_t>(n) * sch.pairs.size() * static_cast<std::uint64_t>(bps);
    } else if (sch.kind == MitigationScheme::Kind::csc) {
        const SubcarrierSet& coded = *sch.coded;
        int j = 0;
        for (; j + 1 < n; j += 2) {
            const auto& t0 = tx[static_cast<std::size_t>(j)];
            const auto& t1 = tx[static_cast<std::size_t>(j + 1)];
            const auto& y0 = y[static_cast<std::size_t>(j)];
            const auto& y1 = y[static_cast<std::size_t>(j + 1)];
            for (int k : omega2) {
                if (coded.contains(k)) continue;
                count(k, t0.at(k), y0.at(k));
                count(k, t1.at(k), y1.at(k));
            }
            CscDecodeOptions opts;
            opts.selector = plan.selector;
            opts.power = sc.link2.power_per_subcarrier;
            if (plan.selector == CscSelector::genie)
                opts.interference_power = {window_energy(rx.interference_window(j, cfg), cfg, coded),
                                           window_energy(rx.interference_window(j + 1, cfg), cfg, coded)};
            const auto dec = csc_decode({y0, y1}, coded, cfg, opts);
            for (int k : coded) count(k, t0.at(k), dec.at(k));
        }
        for (; j < n; ++j)
            for (int k : omega2) count(k, tx[static_cast<std::size_t>(j)].at(k), y[static_cast<std::size_t>(j)].at(k));
        out.overhead_bits = static_cast<std::uint64_t>(n / 2) * coded.size() * static_cast<std::uint64_t>(bps);
    } else {
        for (int j = 0; j < n; ++j)
            for (int k : omega2) count(k, tx[static_cast<std::size_t>(j)].at(k), y[static_cast<std::size_t>(j)].at(k));
    }
    out.payload_bits = std::accumulate(out.bits.begin(), out.bits.end(), std::uint64_t{0});
    out.error_bits = std::accumulate(out.errors.begin(), out.errors.end(), std::uint64_t{0});
    return out;
}

PowerSpectrum measure_scheme_spectrum(const ScenarioSpec& spec, const MitigationScheme& scheme1,
                                      std::span<const double> f_grid, int n_trials, int threads) {
    spec.validate();
    scheme1.validate(spec.link1.subcarriers);
    if (n_trials < 1) throw ArgumentError("n_trials must be >= 1");
    const OfdmConfig& cfg = spec.cfg;
    const bool pick = scheme1.kind == MitigationScheme::Kind::csc;
    std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(n_trials));
    parallel_for(
        static_cast<std::size_t>(n_trials),
        [&](std::size_t t) {
            const TrialDraw draw = draw_trial(spec, t);
            Rng data = draw.data_rng();
            auto s1 = coded_stream(spec.link1, scheme1, 2 + kInterfererLead, data, cfg);
            const ReceivedFrame rx = synthesize_frame(spec, draw, std::move(s1), {}, 2);
            int j = 0;
            if (pick) {
                const double e0 = window_energy(rx.interference_window(0, cfg), cfg, spec.link2.subcarriers);
                const double e1 = window_energy(rx.interference_window(1, cfg), cfg, spec.link2.subcarriers);
                j = e1 < e0 ? 1 : 0;
            }
            per_trial[t] = dtft_probe(rx.window(j, cfg), cfg, f_grid).values;
        },
        threads);
    PowerSpectrum out;
    out.f_grid.assign(f_grid.begin(), f_grid.end());
    out.values.assign(f_grid.size(), 0.0);
    for (const auto& v : per_trial)
        for (std::size_t i = 0; i < v.size(); ++i) out.values[i] += v[i];
    for (auto& v : out.values) v /= n_trials * spec.link1.power_per_subcarrier;
    return out;
}

// ---- synchronization ----------------------------------------------------------

SyncTrial run_sync_trial(const ScenarioSpec& spec, std::uint64_t trial_index, const SyncTrialOptions& opts) {
    const OfdmConfig& cfg = spec.cfg;
    const int frame = cfg.frame_length();
    const TrialDraw draw = draw_trial(spec, trial_index);
    Rng data = draw.data_rng();
    const double cfo = std::uniform_real_distribution<double>(-0.5, 0.5)(data);

    // [0, L) silence, [L, 2L) preamble, [2L, 4L) data.
    std::vector<Complex> buf(static_cast<std::size_t>(4 * frame));
    const Preamble pre = make_preamble(spec.link2, cfg, spec.seed);
    std::vector<FreqSymbol> payload{random_symbol(spec.link2, data), random_symbol(spec.link2, data)};
    std::vector<Complex> w2 = pre.time.samples;
    const auto tail = modulate_stream(payload, cfg);
    w2.insert(w2.end(), tail.begin(), tail.end());
    add_waveform(buf, w2, frame, draw.h2, cfo, cfg.n_fft);

    if (opts.interferer_on) {
        std::vector<FreqSymbol> s1;
        for (int j = 0; j < 5; ++j) s1.push_back(random_symbol(spec.link1, data));
        add_waveform(buf, modulate_stream(s1, cfg), static_cast<long>(draw.tau_samples) - frame, draw.h1, -draw.epsilon,
                     cfg.n_fft);
    }
    Rng noise = draw.noise_rng();
    add_awgn(buf, spec.noise_power_per_subcarrier, cfg.n_fft, noise);
    if (opts.filter) buf = multiband_filter(buf, preamble_span(spec.link2), cfg);

    const SyncResult r = synchronize(buf, cfg);
    SyncTrial out;
    out.detected = r.detected;
    if (r.detected) {
        out.error = r.cfo_estimate - cfo;
        out.timing_error = r.frame_start - (frame + cfg.n_cp);
    }
    return out;
}

namespace {

struct SyncStats {
    std::int64_t n = 0;
    std::int64_t detected = 0;
    std::int64_t failed = 0;
    double mean = 0.0;
    double std = 0.0;
    double mean_abs_timing = 0.0;
};

SyncStats sync_campaign(const ScenarioSpec& sc, int n_trials, const SyncTrialOptions& opts, int threads) {
    std::vector<SyncTrial> trials(static_cast<std::size_t>(n_trials));
    std::vector<char> failed(static_cast<std::size_t>(n_trials), 0);
    parallel_for(
        static_cast<std::size_t>(n_trials),
        [&](std::size_t t) {
            try {
                trials[t] = run_sync_trial(sc, t, opts);
                if (!std::isfinite(trials[t].error)) failed[t] = 1;
            } catch (const std::exception&) {
                failed[t] = 1;
            }
        },
        threads);
    SyncStats s;
    s.n = n_trials;
    double sum = 0.0, timing = 0.0;
    for (std::size_t t = 0; t < trials.size(); ++t) {
        if (failed[t]) {
            ++s.failed;
            continue;
        }
        if (!trials[t].detected) continue;
        ++s.detected;
        sum += trials[t].error;
        timing += std::abs(trials[t].timing_error);
    }
    if (s.detected == 0) return s;
    s.mean = sum / static_cast<double>(s.detected);
    s.mean_abs_timing = timing / static_cast<double>(s.detected);
    double ss = 0.0;
    for (std::size_t t = 0; t < trials.size(); ++t)
        if (!failed[t] && trials[t].detected) ss += (trials[t].error - s.mean) * (trials[t].error - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.detected));
    return s;
}

}  // namespace

// ---- campaigns ----------------------------------------------------------------

CampaignReport run_interference_strength(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    r.set_meta("noise_power_per_subcarrier", format_double(0.0));

    const OfdmConfig& cfg = spec.scenario.cfg;
    const std::vector<double> f = grid(1.0, static_cast<double>(spec.scenario.link2.subcarriers.size()), 1.0);

    auto measure = [&](const SubcarrierSet& omega1, Table& t, bool with_width) {
        ScenarioSpec sc = spec.scenario;
        sc.link1.subcarriers = omega1;
        sc.noise_power_per_subcarrier = 0.0;
        sc.channel = ChannelModel::non_fading();
        const auto flat = measure_cbi(sc, f, spec.n_trials, true, spec.threads);
        sc.channel = ChannelModel::rayleigh(true);
        const auto ray = measure_cbi(sc, f, spec.n_trials, true, spec.threads);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = cbi_overall(f[i], omega1, 1.0, cfg.n_fft, cfg.n_cp);
            worst = std::max({worst, std::abs(to_db(flat.values[i]) - to_db(a)), std::abs(to_db(ray.values[i]) - to_db(a))});
            std::vector<Cell> row;
            if (with_width) row.emplace_back(static_cast<std::int64_t>(omega1.size()));
            for (Cell c : {Cell(f[i]), Cell(to_db(a)), Cell(to_db(flat.values[i])), Cell(to_db(ray.values[i])), Cell(a),
                           Cell(flat.values[i]), Cell(ray.values[i]), Cell(static_cast<std::int64_t>(spec.n_trials))})
                row.push_back(c);
            t.add_row(std::move(row));
        }
        return worst;
    };

    auto make_table = [](std::string name, std::string desc, bool with_width) {
        Table t;
        t.name = std::move(name);
        t.description = std::move(desc);
        if (with_width) t.add_column("interferer_width", "subcarriers");
        t.add_column("f", "subcarriers");
        t.add_column("analytic_db", "dB");
        t.add_column("sim_nonfading_db", "dB");
        t.add_column("sim_rayleigh_db", "dB");
        t.add_column("analytic_lin", "linear");
        t.add_column("sim_nonfading_lin", "linear");
        t.add_column("sim_rayleigh_lin", "linear");
        t.add_column("n_trials");
        return t;
    };

    Table main = make_table("interference_strength", "average cross-band interference normalized to P1, uniform mismatch", false);
    const double worst = measure(spec.scenario.link1.subcarriers, main, false);
    r.set_meta("max_abs_diff_db", format_double(worst));
    r.tables.push_back(std::move(main));

    if (!spec.extra_interferer_widths.empty()) {
        Table widths = make_table("interference_strength_width", "interferer width variants", true);
        double worst_w = 0.0;
        for (int w : spec.extra_interferer_widths) {
            if (w < 1 || w > cfg.n_fft / 2) throw ConfigError("interferer width must lie in [1, n_fft/2]");
            worst_w = std::max(worst_w, measure(SubcarrierSet::range(-w + 1, 0), widths, true));
        }
        r.set_meta("max_abs_diff_db_width_variants", format_double(worst_w));
        r.tables.push_back(std::move(widths));
    }
    finish_meta(r);
    return r;
}

CampaignReport run_param_sweep(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    const auto f = grid(1.0, 8.0, 0.1);
    SensitivityBase base;
    base.interferer_width = static_cast<int>(spec.scenario.link1.subcarriers.size());
    base.rho = spec.scenario.cfg.cp_overhead();
    base.n_fft = spec.scenario.cfg.n_fft;

    Table t;
    t.name = "param_sweep";
    t.description = "analytic cross-band interference versus interferer width L, CP overhead rho and FFT size N";
    t.add_column("param");
    t.add_column("value");
    t.add_column("f", "subcarriers");
    add_db_lin(t, "cbi");
    const std::vector<std::pair<SweepParam, std::vector<double>>> sweeps{
        {SweepParam::L, {1, 2, 4, 8, 16}},
        {SweepParam::rho, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}},
        {SweepParam::N, {64, 256, 1024}},
    };
    const char* names[] = {"L", "rho", "N"};
    for (const auto& [param, values] : sweeps) {
        const auto res = param_sensitivity(param, values, base, f);
        for (std::size_t v = 0; v < values.size(); ++v)
            for (std::size_t i = 0; i < f.size(); ++i) {
                const double lin = res.spectra[v].values[i];
                t.add_row({std::string(names[static_cast<int>(param)]), values[v], f[i], to_db(lin), lin});
            }
    }
    r.tables.push_back(std::move(t));
    finish_meta(r);
    return r;
}

CampaignReport run_sync_error(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    r.set_meta("sync_filter", spec.sync_filter ? "on" : "off");
    const OfdmConfig& cfg = spec.scenario.cfg;
    const auto& omega1 = spec.scenario.link1.subcarriers;
    const auto& omega2 = spec.scenario.link2.subcarriers;
    const double p2 = spec.scenario.link2.power_per_subcarrier;
    const double pn = spec.scenario.noise_power_per_subcarrier;
    const int m = static_cast<int>(omega2.size());

    Table t;
    t.name = "sync_error";
    t.description = "intra-link CFO estimation error, CFO uniform in [-0.5, 0.5]";
    t.add_column("p_r_db", "dB");
    t.add_column("sinr_db", "dB");
    t.add_column("analytic_std", "subcarriers");
    t.add_column("sim_std", "subcarriers");
    t.add_column("mean_error", "subcarriers");
    t.add_column("detection_rate");
    t.add_column("mean_abs_timing_error", "samples");
    t.add_column("n_trials");
    t.add_column("n_detected");
    for (double p_r : spec.p_r_db) {
        const ScenarioSpec sc = with_power_ratio(spec.scenario, p_r);
        const double p1 = sc.link1.power_per_subcarrier;
        const double pi = mean_interference_power(
            omega2, [&](double f) { return cbi_overall(f, omega1, p1, cfg.n_fft, cfg.n_cp); }, 0.0);
        const double sinr = p2 / (pi + pn);
        const auto s = sync_campaign(sc, spec.n_trials, {true, spec.sync_filter}, spec.threads);
        r.failed_trials += s.failed;
        t.add_row({p_r, to_db(sinr), sync_error_std(m, sinr), s.std, s.mean,
                   static_cast<double>(s.detected) / static_cast<double>(s.n), s.mean_abs_timing, s.n, s.detected});
    }
    r.tables.push_back(std::move(t));

    Table q;
    q.name = "sync_error_noise_only";
    q.description = "CFO estimation error without interferer or filter";
    q.add_column("sinr_db", "dB");
    q.add_column("analytic_std", "subcarriers");
    q.add_column("sim_std", "subcarriers");
    q.add_column("mean_error", "subcarriers");
    q.add_column("detection_rate");
    q.add_column("n_trials");
    q.add_column("n_detected");
    const auto s = sync_campaign(spec.scenario, spec.n_trials, {false, false}, spec.threads);
    r.failed_trials += s.failed;
    const double sinr = pn > 0.0 ? p2 / pn : std::numeric_limits<double>::infinity();
    q.add_row({to_db(sinr), sync_error_std(m, sinr), s.std, s.mean, static_cast<double>(s.detected) / static_cast<double>(s.n),
               s.n, s.detected});
    r.tables.push_back(std::move(q));
    finish_meta(r);
    return r;
}

namespace {

struct BerAccumulator {
    std::vector<std::uint64_t> bits, errors;
    std::int64_t failed = 0;
};

BerAccumulator ber_point(const PacketPlan& plan, int n_trials, int threads) {
    std::vector<PacketOutcome> outs(static_cast<std::size_t>(n_trials));
    parallel_for(
        static_cast<std::size_t>(n_trials),
        [&](std::size_t t) {
            try {
                outs[t] = run_packet(plan, t);
            } catch (const std::exception&) {
                outs[t] = PacketOutcome{};
                outs[t].failed = true;
            }
        },
        threads);
    BerAccumulator acc;
    const std::size_t m = plan.scenario.link2.subcarriers.size();
    acc.bits.assign(m, 0);
    acc.errors.assign(m, 0);
    for (const auto& o : outs) {
        if (o.failed) {
            ++acc.failed;
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            acc.bits[i] += o.bits[i];
            acc.errors[i] += o.errors[i];
        }
    }
    return acc;
}

}  // namespace

CampaignReport run_ber(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    r.set_meta("tie_channels", spec.ber_tie_channels ? "true" : "false");

    Table t;
    t.name = "ber";
    t.description = "link 2 bit error rate per subcarrier, perfect synchronization and CSI";
    t.add_column("sweep");
    t.add_column("p_r_db", "dB");
    t.add_column("k_factor");
    t.add_column("subcarrier");
    t.add_column("ber");
    t.add_column("ci_lo");
    t.add_column("ci_hi");
    t.add_column("bits");
    t.add_column("errors");

    auto point = [&](const std::string& sweep, double p_r, double k) {
        PacketPlan plan;
        plan.scenario = with_power_ratio(spec.scenario, p_r);
        plan.scenario.channel = std::isinf(k) ? ChannelModel::non_fading() : ChannelModel::rician(k, spec.ber_tie_channels);
        plan.n_symbols = spec.packet_symbols;
        const auto acc = ber_point(plan, spec.n_trials, spec.threads);
        r.failed_trials += acc.failed;
        const auto& omega2 = plan.scenario.link2.subcarriers;
        for (std::size_t i = 0; i < omega2.size(); ++i) {
            const auto ci = wilson_interval(acc.errors[i], acc.bits[i]);
            const double ber = acc.bits[i] ? static_cast<double>(acc.errors[i]) / static_cast<double>(acc.bits[i]) : 0.0;
            t.add_row({sweep, p_r, k, static_cast<std::int64_t>(omega2.indices()[i]), ber, ci.lo, ci.hi,
                       static_cast<std::int64_t>(acc.bits[i]), static_cast<std::int64_t>(acc.errors[i])});
        }
    };
    for (double p_r : spec.p_r_db) point("p_r", p_r, 0.0);
    for (double k : spec.k_factors) point("k_factor", spec.ber_k_sweep_p_r_db, k);
    r.tables.push_back(std::move(t));
    finish_meta(r);
    return r;
}

CampaignReport run_mitigation_compare(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);

    ScenarioSpec sc = spec.scenario;
    sc.noise_power_per_subcarrier = 0.0;
    sc.channel = ChannelModel::non_fading();
    r.set_meta("noise_power_per_subcarrier", format_double(0.0));
    r.set_meta("channel", "non_fading");
    const OfdmConfig& cfg = sc.cfg;
    const SubcarrierSet omega1 = sc.link1.subcarriers;
    const int w1 = static_cast<int>(omega1.size());
    const int total = static_cast<int>(omega1.size() + sc.link2.subcarriers.size());

    // Equal effective-rate loss: gap/total for FGB, coded fraction / 2 for ISC and CSC.
    const int gap = static_cast<int>(std::lround(spec.overhead * total));
    const int coded = std::min(w1, static_cast<int>(std::lround(2.0 * spec.overhead * w1)));
    const int pairs = coded / 2;
    r.set_meta("overhead", format_double(spec.overhead));
    r.set_meta("fgb_gap", std::to_string(gap));
    r.set_meta("isc_pairs", std::to_string(pairs) + " at the edge nearest link 2");
    r.set_meta("csc_coded", std::to_string(coded) + " at the edge nearest link 2");

    const auto f = grid(1.0, 8.0, 0.1);
    const auto none = measure_scheme_spectrum(sc, MitigationScheme::none(), f, spec.n_trials, spec.threads);

    // FGB keeps link 2's probe axis; link 1 moves down by the gap and loses the gap's share.
    const int shrink = gap - gap / 2;
    const int w_fgb = w1 - shrink;
    if (w_fgb < 1) throw ConfigError("overhead too large for the FGB layout");
    ScenarioSpec fgb_sc = sc;
    fgb_sc.link1.subcarriers = SubcarrierSet::range(omega1.back() - gap - w_fgb + 1, omega1.back() - gap);
    const auto fgb = measure_scheme_spectrum(fgb_sc, MitigationScheme::none(), f, spec.n_trials, spec.threads);
    r.set_meta("fgb_interferer_subcarriers",
               std::to_string(fgb_sc.link1.subcarriers.front()) + ".." + std::to_string(fgb_sc.link1.subcarriers.back()));

    const auto isc = measure_scheme_spectrum(sc, MitigationScheme::isc(edge_pairs(omega1, pairs, true)), f,
                                             spec.n_trials, spec.threads);
    const auto csc_set = edge_subset(omega1, coded, true);
    const auto csc = csc_set ? measure_scheme_spectrum(sc, MitigationScheme::csc(*csc_set), f, spec.n_trials, spec.threads)
                             : none;
    const auto csc_full = measure_scheme_spectrum(sc, MitigationScheme::csc(omega1), f, spec.n_trials, spec.threads);

    Table t;
    t.name = "mitigation_spectra";
    t.description = "interference spectra normalized to P1 at equal overhead";
    t.add_column("f", "subcarriers");
    for (const char* s : {"none", "fgb", "fgb_analytic", "isc", "csc", "csc_full"}) add_db_lin(t, s);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double fa = cbi_overall(f[i], fgb_sc.link1.subcarriers, 1.0, cfg.n_fft, cfg.n_cp);
        std::vector<Cell> row{f[i]};
        for (double v : {none.values[i], fgb.values[i], fa, isc.values[i], csc.values[i], csc_full.values[i]}) {
            row.emplace_back(to_db(v));
            row.emplace_back(v);
        }
        t.add_row(std::move(row));
    }
    r.tables.push_back(std::move(t));

    // Fully coded CSC at fixed mismatches, zero inter-link offset.
    Table q;
    q.name = "csc_fixed_tau";
    q.description = "fully CSC-coded interferer at fixed mismatch";
    q.add_column("tau", "samples");
    q.add_column("f", "subcarriers");
    add_db_lin(q, "csc_full");
    const auto fq = grid(1.0, 8.0, 0.25);
    const int frame = cfg.frame_length();
    for (int tau : {0, cfg.n_cp / 2, cfg.n_cp, cfg.n_cp + 8, frame / 2, frame - 8, frame - 1}) {
        ScenarioSpec st = sc;
        st.mismatch = MismatchModel::fixed(tau);
        st.freq_offset = FreqOffsetModel::fixed(0.0);
        const auto s = measure_scheme_spectrum(st, MitigationScheme::csc(omega1), fq, spec.n_trials, spec.threads);
        for (std::size_t i = 0; i < fq.size(); ++i)
            q.add_row({static_cast<std::int64_t>(tau), fq[i], to_db(s.values[i]), s.values[i]});
    }
    r.tables.push_back(std::move(q));
    finish_meta(r);
    return r;
}

// ---- throughput ---------------------------------------------------------------

std::string describe(const ThroughputConfig& c) {
    switch (c.kind) {
        case MitigationScheme::Kind::none: return "none";
        case MitigationScheme::Kind::fgb: return "gap=" + std::to_string(c.param);
        case MitigationScheme::Kind::isc: return "isc_coded=" + std::to_string(c.param);
        case MitigationScheme::Kind::csc: return "csc_coded=" + std::to_string(c.param);
    }
    return "?";
}

PacketPlan make_throughput_plan(const ScenarioSpec& base, int total_subcarriers, const ThroughputConfig& c,
                                int n_symbols, CscSelector selector) {
    PacketPlan plan;
    plan.scenario = base;
    plan.n_symbols = n_symbols;
    plan.selector = selector;
    const int gap = c.kind == MitigationScheme::Kind::fgb ? c.param : 0;
    auto [omega1, omega2] = fgb_allocate(total_subcarriers, gap);
    plan.scenario.link1.subcarriers = omega1;
    plan.scenario.link2.subcarriers = omega2;
    if (c.kind == MitigationScheme::Kind::fgb) {
        plan.scheme1 = plan.scheme2 = MitigationScheme::fgb(gap);
    } else if (c.kind == MitigationScheme::Kind::isc) {
        if (c.param % 2 != 0) throw ArgumentError("ISC coded count must be even");
        plan.scheme1 = MitigationScheme::isc(edge_pairs(omega1, c.param / 2, true));
        plan.scheme2 = MitigationScheme::isc(edge_pairs(omega2, c.param / 2, false));
    } else if (c.kind == MitigationScheme::Kind::csc && c.param > 0) {
        plan.scheme1 = MitigationScheme::csc(*edge_subset(omega1, c.param, true));
        plan.scheme2 = MitigationScheme::csc(*edge_subset(omega2, c.param, false));
    }
    return plan;
}

std::vector<ThroughputConfig> throughput_candidates(MitigationScheme::Kind kind, int total_subcarriers) {
    std::vector<ThroughputConfig> out;
    const int half = total_subcarriers / 2;
    switch (kind) {
        case MitigationScheme::Kind::none: out.push_back({kind, 0}); break;
        case MitigationScheme::Kind::fgb:
            for (int x = 0; x <= total_subcarriers - 2; ++x) out.push_back({kind, x});
            break;
        case MitigationScheme::Kind::isc:
            for (int c = 0; c <= half; c += 2) out.push_back({kind, c});
            break;
        case MitigationScheme::Kind::csc:
            for (int c = 0; c <= half; ++c) out.push_back({kind, c});
            break;
    }
    return out;
}

namespace {

struct ThroughputPoint {
    ThroughputConfig config;
    std::int64_t packets = 0;  // excluding failed trials
    std::int64_t successes = 0;
    std::int64_t failed = 0;
    double slot_scale = 0.0;  // payload bits / (symbols * total subcarriers)

    double throughput() const { return packets ? slot_scale * static_cast<double>(successes) / static_cast<double>(packets) : 0.0; }
    Interval ci() const {
        const auto w = wilson_interval(static_cast<std::uint64_t>(successes), static_cast<std::uint64_t>(packets));
        return {w.lo * slot_scale, w.hi * slot_scale};
    }
};

ThroughputPoint evaluate_config(const ScenarioSpec& base, const ExperimentSpec& spec, const ThroughputConfig& c) {
    const PacketPlan plan = make_throughput_plan(base, spec.total_subcarriers, c, spec.packet_symbols, spec.selector);
    std::vector<PacketOutcome> outs(static_cast<std::size_t>(spec.n_trials));
    parallel_for(
        static_cast<std::size_t>(spec.n_trials),
        [&](std::size_t t) {
            try {
                outs[t] = run_packet(plan, t);
            } catch (const std::exception&) {
                outs[t] = PacketOutcome{};
                outs[t].failed = true;
            }
        },
        spec.threads);
    ThroughputPoint p;
    p.config = c;
    const double slots = static_cast<double>(spec.packet_symbols) * spec.total_subcarriers;
    for (const auto& o : outs) {
        if (o.failed) {
            ++p.failed;
            continue;
        }
        ++p.packets;
        if (o.ok()) ++p.successes;
        p.slot_scale = static_cast<double>(o.payload_bits) / slots;
    }
    return p;
}

ThroughputPoint best_of(const ScenarioSpec& base, const ExperimentSpec& spec, MitigationScheme::Kind kind,
                        Table* search, double p_r, double eps_max, std::int64_t& failed) {
    ThroughputPoint best;
    bool first = true;
    for (const auto& c : throughput_candidates(kind, spec.total_subcarriers)) {
        const auto p = evaluate_config(base, spec, c);
        failed += p.failed;
        if (search) {
            const auto ci = p.ci();
            search->add_row({p_r, eps_max, std::string(to_string(kind)), describe(c), p.throughput(), ci.lo, ci.hi,
                             p.successes, p.packets});
        }
        if (first || p.throughput() > best.throughput()) best = p;
        first = false;
    }
    return best;
}

Table throughput_table(std::string name, std::string desc) {
    Table t;
    t.name = std::move(name);
    t.description = std::move(desc);
    t.add_column("p_r_db", "dB");
    t.add_column("eps_max", "subcarriers");
    t.add_column("scheme");
    t.add_column("config");
    t.add_column("throughput", "bits/symbol/subcarrier");
    t.add_column("ci_lo", "bits/symbol/subcarrier");
    t.add_column("ci_hi", "bits/symbol/subcarrier");
    t.add_column("successes");
    t.add_column("packets");
    return t;
}

ScenarioSpec throughput_base(const ExperimentSpec& spec, double p_r, double eps_max) {
    ScenarioSpec sc = with_power_ratio(spec.scenario, p_r);
    sc.freq_offset = FreqOffsetModel::uniform(eps_max);
    return sc;
}

}  // namespace

CampaignReport run_throughput(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    r.set_meta("epsilon", "uniform " + format_double(spec.throughput_eps_max));
    r.set_meta("total_subcarriers", std::to_string(spec.total_subcarriers));
    r.set_meta("csc_selector", spec.selector == CscSelector::genie ? "genie" : "energy_metric");
    r.set_meta("coding_position", "edge subcarriers nearest the other link");

    Table best = throughput_table("throughput", "link 2 effective throughput with the best configuration per scheme");
    Table search = throughput_table("throughput_search", "every configuration evaluated by the search");
    for (double p_r : spec.p_r_db) {
        const ScenarioSpec base = throughput_base(spec, p_r, spec.throughput_eps_max);
        for (auto kind : {MitigationScheme::Kind::none, MitigationScheme::Kind::fgb, MitigationScheme::Kind::isc,
                          MitigationScheme::Kind::csc}) {
            const auto p = best_of(base, spec, kind, &search, p_r, spec.throughput_eps_max, r.failed_trials);
            const auto ci = p.ci();
            best.add_row({p_r, spec.throughput_eps_max, std::string(to_string(kind)), describe(p.config), p.throughput(),
                          ci.lo, ci.hi, p.successes, p.packets});
        }
    }
    r.tables.push_back(std::move(best));
    r.tables.push_back(std::move(search));
    finish_meta(r);
    return r;
}

CampaignReport run_freq_offset_sensitivity(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport r;
    r.kind = to_string(spec.kind);
    add_scenario_meta(r, spec);
    r.set_meta("epsilon", "uniform, swept");
    r.set_meta("total_subcarriers", std::to_string(spec.total_subcarriers));
    r.set_meta("csc_selector", spec.selector == CscSelector::genie ? "genie" : "energy_metric");

    Table best = throughput_table("freq_offset_sensitivity", "best-configuration throughput versus eps_max");
    for (double p_r : spec.sensitivity_p_r_db)
        for (double e : spec.eps_max) {
            const ScenarioSpec base = throughput_base(spec, p_r, e);
            for (auto kind : {MitigationScheme::Kind::none, MitigationScheme::Kind::fgb, MitigationScheme::Kind::csc}) {
                const auto p = best_of(base, spec, kind, nullptr, p_r, e, r.failed_trials);
                const auto ci = p.ci();
                best.add_row({p_r, e, std::string(to_string(kind)), describe(p.config), p.throughput(), ci.lo, ci.hi,
                              p.successes, p.packets});
            }
        }
    r.tables.push_back(std::move(best));
    finish_meta(r);
    return r;
}

CampaignReport run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::interference_strength: return run_interference_strength(spec);
        case ExperimentKind::param_sweep: return run_param_sweep(spec);
        case ExperimentKind::sync_error: return run_sync_error(spec);
        case ExperimentKind::ber: return run_ber(spec);
        case ExperimentKind::mitigation_compare: return run_mitigation_compare(spec);
        case ExperimentKind::throughput: return run_throughput(spec);
        case ExperimentKind::freq_offset_sensitivity: return run_freq_offset_sensitivity(spec);
    }
    throw ConfigError("unhandled experiment kind");
}

}  // namespace xband
