#include "xband/acceptance.hpp"

#include "xband/analytic.hpp"
#include "xband/csv.hpp"
#include "xband/harness.hpp"
#include "xband/oracle.hpp"
#include "xband/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace xband {
namespace {

constexpr int kN = 64;
constexpr int kNcp = 16;

const SubcarrierSet& omega1() {
    static const SubcarrierSet s = SubcarrierSet::range(-7, 0);
    return s;
}
const SubcarrierSet& omega2() {
    static const SubcarrierSet s = SubcarrierSet::range(1, 8);
    return s;
}

std::vector<double> quarter_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 28; ++i) g.push_back(1.0 + 0.25 * i);
    return g;
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << v;
    return os.str();
}

ExperimentSpec base_spec(ExperimentKind kind, const AcceptanceOptions& o, int trials) {
    ExperimentSpec s;
    s.kind = kind;
    s.scenario.seed = o.seed;
    s.n_trials = trials;
    s.threads = o.threads;
    return s;
}

void maybe_write(const AcceptanceOptions& o, const CampaignReport& r) {
    if (o.out_dir) write_report(r, *o.out_dir / r.kind);
}

struct Check {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "" : "FAILED ") + what);
    }
    std::string detail() const {
        std::string s;
        for (std::size_t i = 0; i < notes.size(); ++i) s += (i ? "; " : "") + notes[i];
        return s;
    }
};

// ---- criteria -------------------------------------------------------------

Check table3_analytic() {
    Check c;
    const double expected[] = {-9.1, -13.5, -16.1, -17.8, -19.2, -20.3, -21.3, -22.1};
    const auto t0 = std::chrono::steady_clock::now();
    double values[8];
    for (int f = 1; f <= 8; ++f) values[f - 1] = to_db(cbi_overall(f, omega1(), 1.0, kN, kNcp));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(values[i] - expected[i]));
    std::string got;
    for (int i = 0; i < 8; ++i) got += (i ? " " : "") + fmt(values[i], 2);
    c.require(worst <= 0.05 + 1e-9, "max |theory - table| = " + fmt(worst, 4) + " dB (tol 0.05); values " + got);
    c.require(secs < 1.0, "runtime " + fmt(secs, 4) + " s (< 1 s)");
    return c;
}

Check sim_vs_theory(const AcceptanceOptions& o) {
    Check c;
    auto spec = base_spec(ExperimentKind::interference_strength, o, o.cbi_trials);
    const auto r = run_interference_strength(spec);
    maybe_write(o, r);
    const auto& t = r.table("interference_strength");
    const auto a = t.numbers("analytic_db"), nf = t.numbers("sim_nonfading_db"), ry = t.numbers("sim_rayleigh_db");
    double w_nf = 0.0, w_ry = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        w_nf = std::max(w_nf, std::abs(nf[i] - a[i]));
        w_ry = std::max(w_ry, std::abs(ry[i] - a[i]));
    }
    const double tol = o.cbi_trials >= 10000 ? 0.2 : 0.4;
    c.require(w_nf <= tol, "non-fading max diff " + fmt(w_nf) + " dB (tol " + fmt(tol, 1) + ")");
    c.require(w_ry <= tol, "Rayleigh max diff " + fmt(w_ry) + " dB (tol " + fmt(tol, 1) + ")");
    const double w_l = std::stod(r.meta_value("max_abs_diff_db_width_variants"));
    c.require(w_l <= 0.3, "L in {4,16} max diff " + fmt(w_l) + " dB (tol 0.3)");
    c.notes.push_back(std::to_string(o.cbi_trials) + " trials");
    return c;
}

Check case_gap() {
    Check c;
    std::string gaps;
    bool ok = true;
    for (int d = 1; d <= 8; ++d) {
        const double a = step_average([&](double f) { return cbi_case_a(f, omega1(), 1.0, kN); }, d);
        const double b = step_average([&](double f) { return cbi_case_b_avg(f, omega1(), 1.0, kN); }, d);
        const double g = to_db(b) - to_db(a);
        ok = ok && std::abs(g - 3.0) <= 0.5;
        gaps += (d > 1 ? " " : "") + fmt(g, 2);
    }
    c.require(ok, "case B - case A per separation: " + gaps + " dB (3 +/- 0.5)");
    return c;
}

Check param_sweeps() {
    Check c;
    const auto grid = quarter_grid();
    // CP overhead.
    double lo = 1e9, hi = -1e9;
    for (int f = 1; f <= 8; ++f) {
        const double d = to_db(cbi_overall_rho(f, omega1(), 1.0, kN, 0.0)) - to_db(cbi_overall_rho(f, omega1(), 1.0, kN, 0.5));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    c.require(lo >= 2.5 && hi <= 3.5, "rho 0 -> 0.5 reduction at integer f in [" + fmt(lo) + ", " + fmt(hi) + "] dB (3 +/- 0.5)");
    // FFT size at fixed rho.
    SensitivityBase base;
    const std::vector<double> ns{64, 256, 1024};
    const auto sw = param_sensitivity(SweepParam::N, ns, base, grid);
    for (int which : {0, 1}) {
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(to_db(sw.spectra[which].values[i]) - to_db(sw.spectra[2].values[i])));
        c.require(worst <= 0.1, "N=" + std::to_string(static_cast<int>(ns[which])) + " vs N=1024 max diff " + fmt(worst) +
                                    " dB (tol 0.1)");
    }
    // Interferer width.
    const std::vector<double> ls{1, 2, 4, 8, 16};
    const auto lw = param_sensitivity(SweepParam::L, ls, base, grid);
    bool mono = true;
    for (std::size_t v = 1; v < ls.size(); ++v)
        for (std::size_t i = 0; i < grid.size(); ++i) mono = mono && lw.spectra[v].values[i] >= lw.spectra[v - 1].values[i];
    c.require(mono, "interference non-decreasing in L over L in {1,2,4,8,16}");
    return c;
}

Check worked_example() {
    Check c;
    const auto cbi = [](double f) { return cbi_overall(f, omega1(), 1.0, kN, kNcp); };
    const double pi = mean_interference_power(omega2(), cbi, 0.0);
    const double pn = 1e-4;
    const double sinr = 1.0 / (pi + pn);
    const double std_f = sync_error_std(static_cast<int>(omega2().size()), sinr);
    c.require(std::abs(to_db(pi) + 15.1) <= 0.1, "P_I = " + fmt(to_db(pi)) + " dB (-15.1 +/- 0.1)");
    c.require(std::abs(std_f - 0.028) <= 0.001, "std = " + fmt(std_f, 5) + " (0.028 +/- 0.001)");
    const double df = 0.056;
    double sig = 0.0, ici_lo = 1e9, ici_hi = -1e9;
    for (int l : omega2()) {
        const auto d = decompose_sig_ici(df, l, omega2(), 1.0, kN);
        sig = to_db(d.p_sig);
        ici_lo = std::min(ici_lo, to_db(d.p_ici));
        ici_hi = std::max(ici_hi, to_db(d.p_ici));
    }
    c.require(std::abs(sig + 0.1) <= 0.05, "P_SIG(delta_f=0.056) = " + fmt(sig) + " dB (-0.1 +/- 0.05)");
    c.require(ici_lo > -23.7 && ici_hi < -20.9,
              "P_ICI over l in [" + fmt(ici_lo, 2) + ", " + fmt(ici_hi, 2) + "] dB (within (-23.7, -20.9))");
    const double c1 = to_db(cbi(1.0)), c8 = to_db(cbi(8.0));
    c.require(std::abs(c1 + 9.1) <= 0.05 && std::abs(c8 + 22.1) <= 0.05,
              "P_CBI(1) = " + fmt(c1, 2) + ", P_CBI(8) = " + fmt(c8, 2) + " dB");
    return c;
}

Check guardband_table() {
    Check c;
    const double cir_min[] = {5.0, 10.0, 15.0};
    const double p_r[] = {0.0, 3.0, 6.0, 9.0};
    const double expected[3][4] = {{0, 0, 0.6, 1.6}, {0.2, 1.0, 2.0, 4.0}, {1.8, 3.7, 5.9, 10.0}};
    OfdmConfig cfg;
    double got[3][4];
    double worst = 0.0;
    bool reachable = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto g = min_guardband(cir_min[i], p_r[j], cfg, 8);
            reachable = reachable && g.achievable;
            got[i][j] = g.f_gb;
            worst = std::max(worst, std::abs(g.f_gb - expected[i][j]));
        }
    bool mono = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i > 0) mono = mono && got[i][j] >= got[i - 1][j];
            if (j > 0) mono = mono && got[i][j] >= got[i][j - 1];
        }
    std::string s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) s += (i + j ? " " : "") + fmt(got[i][j], 1);
    c.require(reachable && worst <= 0.2 + 1e-9, "max |f_gb - table| = " + fmt(worst, 2) + " (tol 0.2); values " + s);
    c.require(mono, "monotone in CIR_min and p_r");
    return c;
}

Check mitigation_spectra(const AcceptanceOptions& o) {
    Check c;
    auto spec = base_spec(ExperimentKind::mitigation_compare, o, o.cbi_trials);
    const auto r = run_mitigation_compare(spec);
    maybe_write(o, r);
    const auto& t = r.table("mitigation_spectra");
    const auto none = t.numbers("none_db"), isc = t.numbers("isc_db"), fgb = t.numbers("fgb_db"),
               fgb_a = t.numbers("fgb_analytic_db");
    double mean = 0.0, worst_fgb = 0.0;
    for (std::size_t i = 0; i < none.size(); ++i) {
        mean += isc[i] - none[i];
        worst_fgb = std::max(worst_fgb, std::abs(fgb[i] - fgb_a[i]));
    }
    mean /= static_cast<double>(none.size());
    c.require(std::abs(mean) <= 1.0, "ISC - none averaged over grid " + fmt(mean) + " dB (|.| <= 1)");
    const auto& q = r.table("csc_fixed_tau");
    const auto f = q.numbers("f"), v = q.numbers("csc_full_db");
    double worst_csc = -1e300;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] == std::round(f[i])) worst_csc = std::max(worst_csc, v[i]);
    c.require(worst_csc <= -60.0, "CSC (fully coded, eps=0) at integer f over 7 fixed tau: max " + fmt(worst_csc, 1) + " dBc (<= -60)");
    c.require(worst_fgb <= 0.2, "FGB measured vs analytic shifted curve max diff " + fmt(worst_fgb) + " dB (tol 0.2)");
    return c;
}

struct TputRow {
    double throughput, lo, hi;
    Interval ci() const { return {lo, hi}; }
};

std::map<std::string, TputRow> tput_rows(const Table& t, double p_r, double eps) {
    std::map<std::string, TputRow> out;
    const auto pr = t.numbers("p_r_db"), em = t.numbers("eps_max"), th = t.numbers("throughput"), lo = t.numbers("ci_lo"),
               hi = t.numbers("ci_hi");
    const auto sc = t.strings("scheme");
    for (std::size_t i = 0; i < pr.size(); ++i)
        if (pr[i] == p_r && std::abs(em[i] - eps) < 1e-12) out[sc[i]] = {th[i], lo[i], hi[i]};
    return out;
}

Check throughput(const AcceptanceOptions& o) {
    Check c;
    auto spec = base_spec(ExperimentKind::throughput, o, o.mc_trials);
    const auto r = run_throughput(spec);
    maybe_write(o, r);
    const auto& t = r.table("throughput");
    {
        auto rows = tput_rows(t, 9.0, spec.throughput_eps_max);
        const auto& none = rows.at("none");
        for (const char* s : {"fgb", "csc"}) {
            const auto& x = rows.at(s);
            const bool ok = x.throughput >= 1.8 * none.throughput && x.lo > none.hi;
            c.require(ok, std::string(s) + " at 9 dB: " + fmt(x.throughput) + " vs none " + fmt(none.throughput) +
                              " (>= 1.8x, disjoint CIs)");
        }
    }
    bool order = true;
    std::string ord;
    for (double p : spec.p_r_db) {
        auto rows = tput_rows(t, p, spec.throughput_eps_max);
        const auto& f = rows.at("fgb");
        const auto& s = rows.at("csc");
        order = order && (f.throughput >= s.throughput || overlaps(f.ci(), s.ci()));
        ord += (ord.empty() ? "" : " ") + fmt(p, 0) + "dB:" + fmt(f.throughput) + "/" + fmt(s.throughput);
    }
    c.require(order, "FGB >= CSC (or CIs overlap) at every p_r, fgb/csc " + ord);

    auto sspec = base_spec(ExperimentKind::freq_offset_sensitivity, o, o.mc_trials);
    const auto rs = run_freq_offset_sensitivity(sspec);
    maybe_write(o, rs);
    const auto& ts = rs.table("freq_offset_sensitivity");
    for (double p : sspec.sensitivity_p_r_db) {
        bool mono = true;
        double fmin = 1e300, fmax = -1e300;
        std::string csc_curve;
        TputRow prev{};
        for (std::size_t i = 0; i < sspec.eps_max.size(); ++i) {
            auto rows = tput_rows(ts, p, sspec.eps_max[i]);
            const auto& cs = rows.at("csc");
            if (i > 0) mono = mono && (cs.throughput <= prev.throughput || overlaps(cs.ci(), prev.ci()));
            prev = cs;
            csc_curve += (i ? " " : "") + fmt(cs.throughput);
            fmin = std::min(fmin, rows.at("fgb").throughput);
            fmax = std::max(fmax, rows.at("fgb").throughput);
        }
        const std::string tag = " at " + fmt(p, 0) + " dB";
        c.require(mono, "CSC non-increasing in eps_max (CI overlap)" + tag + ": " + csc_curve);
        auto last = tput_rows(ts, p, sspec.eps_max.back());
        c.require(overlaps(last.at("csc").ci(), last.at("none").ci()),
                  "CSC ~ none at eps_max=" + fmt(sspec.eps_max.back(), 1) + tag + ": " + fmt(last.at("csc").throughput) +
                      " vs " + fmt(last.at("none").throughput));
        const double var = fmax > 0.0 ? (fmax - fmin) / fmax : 0.0;
        c.require(var <= 0.05, "FGB variation across eps_max" + tag + " " + fmt(100.0 * var, 1) + "% (<= 5%)");
    }
    c.notes.push_back(std::to_string(o.mc_trials) + " packets per configuration");
    return c;
}

bool db_close(double a, double b, double tol_db, double floor) {
    if (a <= floor && b <= floor) return true;
    if (a <= 0.0 || b <= 0.0) return false;
    return std::abs(to_db(a) - to_db(b)) <= tol_db;
}

Check oracle_equivalence() {
    Check c;
    const double tol = 0.1;
    const auto grid = quarter_grid();
    const int frame = kN + kNcp;
    auto sweep = [&](const std::string& name, const std::vector<double>& fs, auto closed, auto brute, double floor = 1e-12) {
        double worst = 0.0;
        bool ok = true;
        for (double f : fs) {
            const double a = closed(f), b = brute(f);
            ok = ok && db_close(a, b, tol, floor);
            if (a > floor && b > floor) worst = std::max(worst, std::abs(to_db(a) - to_db(b)));
        }
        c.require(ok, name + " max " + fmt(worst, 4) + " dB");
    };
    const auto& o1 = omega1();

    sweep("case A", grid, [&](double f) { return cbi_case_a(f, o1, 1.0, kN); },
          [&](double f) { return oracle::window_psd_avg(f, 0, kNcp, o1, 1.0, kN, kNcp); });
    for (int tau : {17, 30, 48, 79})
        sweep("case B tau=" + std::to_string(tau), grid,
              [&](double f) { return cbi_case_b_at_tau(f, tau, o1, 1.0, kN, kNcp); },
              [&](double f) { return oracle::window_psd(f, tau, o1, 1.0, kN, kNcp); });
    sweep("case B average", grid, [&](double f) { return cbi_case_b_avg(f, o1, 1.0, kN); },
          [&](double f) { return oracle::window_psd_avg(f, kNcp + 1, frame - 1, o1, 1.0, kN, kNcp); });
    sweep("overall", grid, [&](double f) { return cbi_overall(f, o1, 1.0, kN, kNcp); },
          [&](double f) { return oracle::window_psd_avg(f, 0, frame - 1, o1, 1.0, kN, kNcp); });

    // Continuous-mismatch form integrates to the tau-averaged closed form.
    {
        double worst = 0.0;
        for (double f : grid) {
            const int steps = 2000;
            double s = 0.0;
            for (int i = 0; i < steps; ++i) {
                const double tau = kNcp + kN * (i + 0.5) / steps;
                s += cbi_case_b_at_tau(f, tau, o1, 1.0, kN, kNcp, true);
            }
            s /= steps;
            const double ref = cbi_case_b_avg(f, o1, 1.0, kN);
            worst = std::max(worst, std::abs(s - ref) / ref);
        }
        c.require(worst <= 1e-3, "case B quadrature over tau relative error " + fmt(worst, 6));
    }

    sweep("signal psd", grid, [&](double f) { return signal_psd(f, omega2(), 1.0, kN); },
          [&](double f) { return oracle::window_psd(f, 0, omega2(), 1.0, kN, kNcp); });

    std::vector<double> around;
    for (int i = -16; i <= 16; ++i) around.push_back(4.0 + 0.25 * i);
    const int k = 4;
    sweep("ISC pair", around, [&](double f) { return isc_pair_psd(f, k, 1.0, kN); },
          [&](double f) { return oracle::pair_psd(f, k, 1.0, -1.0, kN); });
    sweep("unpaired", around, [&](double f) { return unpaired_pair_psd(f, k, 1.0, kN); },
          [&](double f) { return oracle::pair_psd(f, k, 1.0, 0.0, kN) + oracle::pair_psd(f, k, 0.0, 1.0, kN); });
    for (int start : {kNcp + kN - 2 * frame, -40, 0, kNcp})
        sweep("CSC pair start " + std::to_string(start), around, [&](double f) { return csc_subcarrier_psd(f, k, 1.0, kN); },
              [&](double f) { return oracle::csc_window_psd(f, k, 1.0, kN, kNcp, start); });

    {
        bool ok = true;
        double worst = 0.0;
        for (int l : omega2())
            for (double df : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
                const auto a = decompose_sig_ici(df, l, omega2(), 1.0, kN);
                const auto b = oracle::sig_ici(df, l, omega2(), 1.0, kN);
                ok = ok && db_close(a.p_sig, b.p_sig, tol, 1e-12) && db_close(a.p_ici, b.p_ici, tol, 1e-12);
                for (auto [x, y] : {std::pair{a.p_sig, b.p_sig}, {a.p_ici, b.p_ici}})
                    if (x > 1e-12 && y > 1e-12) worst = std::max(worst, std::abs(to_db(x) - to_db(y)));
            }
        c.require(ok, "signal/ICI split max " + fmt(worst, 4) + " dB");
    }
    {
        const auto cbi = [&](double f) { return cbi_overall(f, o1, 1.0, kN, kNcp); };
        bool ok = true;
        double worst = 0.0;
        for (double eps : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
            double brute = 0.0;
            for (int l : omega2()) {
                double s = 0.0;
                for (int tau = 0; tau < frame; ++tau) s += oracle::window_psd(l, tau, o1, 1.0, kN, kNcp, eps);
                brute += s / frame;
            }
            brute /= static_cast<double>(omega2().size());
            const double a = mean_interference_power(omega2(), cbi, eps);
            ok = ok && db_close(a, brute, tol, 1e-12);
            worst = std::max(worst, std::abs(to_db(a) - to_db(brute)));
        }
        c.require(ok, "mean interference power with offset max " + fmt(worst, 4) + " dB");
    }
    {
        bool ok = true;
        double worst = 0.0;
        std::uint64_t seed = 11;
        for (double sinr_db : {20.0, 30.0, 40.0}) {
            const double a = sync_error_std(static_cast<int>(omega2().size()), from_db(sinr_db));
            const double b = oracle::cfo_estimator_std(omega2(), from_db(sinr_db), kN, 50000, seed++);
            ok = ok && db_close(a, b, tol, 0.0);
            worst = std::max(worst, std::abs(to_db(a) - to_db(b)));
        }
        c.require(ok, "CFO error std vs simulated estimator max " + fmt(worst, 4) + " dB");
    }
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Check determinism(const AcceptanceOptions& o) {
    Check c;
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("xband_determinism_" + std::to_string(o.seed));
    fs::remove_all(root);
    std::vector<ExperimentSpec> specs;
    for (auto [kind, trials] : {std::pair{ExperimentKind::interference_strength, 400}, {ExperimentKind::sync_error, 100},
                                {ExperimentKind::ber, 20}, {ExperimentKind::mitigation_compare, 50},
                                {ExperimentKind::throughput, 10}, {ExperimentKind::freq_offset_sensitivity, 10}}) {
        auto s = base_spec(kind, o, trials);
        s.eps_max = {0.0, 0.5};
        specs.push_back(s);
    }
    const std::vector<std::pair<std::string, int>> runs{{"serial", 1}, {"parallel", 4}, {"parallel_again", 4}};
    for (const auto& [name, threads] : runs)
        for (auto s : specs) {
            s.threads = threads;
            write_report(run_experiment(s), root / name / to_string(s.kind));
        }
    std::size_t files = 0;
    bool same = true;
    for (const auto& e : fs::recursive_directory_iterator(root / "serial")) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), root / "serial");
        const auto ref = slurp(e.path());
        for (const char* other : {"parallel", "parallel_again"}) same = same && slurp(root / other / rel) == ref;
        ++files;
    }
    fs::remove_all(root);
    c.require(same && files > 0, std::to_string(files) + " CSV files byte-identical across serial, 4-thread and repeated runs");
    return c;
}

const char* criterion_name(int id) {
    static const char* names[] = {"analytic interference table",   "simulation vs theory",
                                  "case B vs case A gap",          "parameter sweeps",
                                  "worked example",                "minimum guardband table",
                                  "mitigation spectra",            "throughput and offset sensitivity",
                                  "closed forms vs brute force",   "determinism"};
    return names[id - 1];
}

}  // namespace

CriterionResult check_criterion(int id, const AcceptanceOptions& opts) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must lie in [1, 10]");
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    switch (id) {
        case 1: c = table3_analytic(); break;
        case 2: c = sim_vs_theory(opts); break;
        case 3: c = case_gap(); break;
        case 4: c = param_sweeps(); break;
        case 5: c = worked_example(); break;
        case 6: c = guardband_table(); break;
        case 7: c = mitigation_spectra(opts); break;
        case 8: c = throughput(opts); break;
        case 9: c = oracle_equivalence(); break;
        case 10: c = determinism(opts); break;
    }
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    r.pass = c.pass;
    r.detail = c.detail();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(check_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + " (" +
           fmt(r.seconds, 1) + " s)";
}

}  // namespace xband
