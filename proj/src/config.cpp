#include "xband/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace xband {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw ConfigError("key '" + key + "': " + what);
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) bad(key, "expected an integer, got '" + v + "'");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) bad(key, "expected an unsigned integer, got '" + v + "'");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    if (v.empty()) bad(key, "expected a number, got an empty value");
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || std::isnan(out)) bad(key, "expected a number, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) bad(key, "list must not be empty");
    return out;
}

int to_int_range(const std::string& key, const std::string& v, long long lo, long long hi) {
    const long long x = to_int(key, v);
    if (x < lo || x > hi) bad(key, "value " + v + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

struct Layout {
    int interferer = 8;
    int signal = 8;
    int guardband = 0;
    double p2 = 1.0;
    double noise_db = -40.0;
    std::string channel = "non_fading";
    double k_factor = 0.0;
    bool tie = true;
};

using Setter = std::function<void(RunConfig&, Layout&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"experiment", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             if (v != "reproduce_paper") {
                 try {
                     parse_experiment_kind(v);
                 } catch (const ConfigError& e) {
                     bad(k, e.what());
                 }
             }
             c.experiment = v;
         }},
        {"seed", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.scenario.seed = to_u64(k, v); }},
        {"trials", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.n_trials = to_int_range(k, v, 1, 100000000);
         }},
        {"out", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             if (v.empty()) bad(k, "output directory must not be empty");
             c.out_dir = v;
         }},
        {"format", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             if (v != "csv") bad(k, "only csv output is supported");
             c.format = v;
         }},
        {"threads", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.threads = to_int_range(k, v, 0, 4096);
         }},
        {"n_fft", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.cfg.n_fft = to_int_range(k, v, 2, 1 << 20);
         }},
        {"n_cp", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.cfg.n_cp = to_int_range(k, v, 0, 1 << 20);
         }},
        {"subcarrier_spacing_hz", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.cfg.subcarrier_spacing_hz = to_double(k, v);
         }},
        {"modulation", [](RunConfig&, Layout&, const std::string& k, const std::string& v) {
             if (v != "qpsk" && v != "QPSK") bad(k, "only qpsk is supported");
         }},
        {"interferer_subcarriers", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             l.interferer = to_int_range(k, v, 1, 1 << 20);
         }},
        {"signal_subcarriers", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             l.signal = to_int_range(k, v, 1, 1 << 20);
         }},
        {"guardband", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             l.guardband = to_int_range(k, v, 0, 1 << 20);
         }},
        {"packet_symbols", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.packet_symbols = to_int_range(k, v, 1, 1 << 20);
         }},
        {"total_subcarriers", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.total_subcarriers = to_int_range(k, v, 2, 1 << 20);
         }},
        {"p_r_db", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.p_r_db = to_double(k, v); }},
        {"p2", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             l.p2 = to_double(k, v);
             if (!(l.p2 > 0.0)) bad(k, "must be positive");
         }},
        {"noise_db", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) { l.noise_db = to_double(k, v); }},
        {"channel", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             if (v != "non_fading" && v != "rayleigh" && v != "rician") bad(k, "expected non_fading, rayleigh or rician");
             l.channel = v;
         }},
        {"k_factor", [](RunConfig&, Layout& l, const std::string& k, const std::string& v) {
             l.k_factor = to_double(k, v);
             if (!(l.k_factor >= 0.0)) bad(k, "must be non-negative");
         }},
        {"tie_channels", [](RunConfig& c, Layout& l, const std::string& k, const std::string& v) {
             l.tie = to_bool(k, v);
             c.spec.ber_tie_channels = l.tie;
         }},
        {"tau", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.mismatch = v == "uniform" ? MismatchModel::uniform() : MismatchModel::fixed(to_double(k, v));
         }},
        {"epsilon", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.freq_offset = FreqOffsetModel::fixed(to_double(k, v));
         }},
        {"epsilon_max", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.scenario.freq_offset = FreqOffsetModel::uniform(to_double(k, v));
         }},
        {"p_r_list", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.p_r_db = to_list(k, v); }},
        {"k_list", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.k_factors = to_list(k, v); }},
        {"ber_k_sweep_p_r_db", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.ber_k_sweep_p_r_db = to_double(k, v);
         }},
        {"eps_max_list", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.eps_max = to_list(k, v); }},
        {"sensitivity_p_r_list", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.sensitivity_p_r_db = to_list(k, v);
         }},
        {"throughput_eps_max", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.throughput_eps_max = to_double(k, v);
         }},
        {"overhead", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.overhead = to_double(k, v); }},
        {"interferer_widths", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             c.spec.extra_interferer_widths.clear();
             for (double w : to_list(k, v)) {
                 if (w != std::floor(w) || w < 1) bad(k, "widths must be positive integers");
                 c.spec.extra_interferer_widths.push_back(static_cast<int>(w));
             }
         }},
        {"csc_selector", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) {
             if (v == "genie") c.spec.selector = CscSelector::genie;
             else if (v == "energy_metric") c.spec.selector = CscSelector::energy_metric;
             else bad(k, "expected genie or energy_metric");
         }},
        {"sync_filter", [](RunConfig& c, Layout&, const std::string& k, const std::string& v) { c.spec.sync_filter = to_bool(k, v); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& kv : setters()) out.push_back(kv.first);
        return out;
    }();
    return keys;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
    std::vector<KeyValue> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value, got '" + t + "'");
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key");
        out.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
    }
    return out;
}

RunConfig parse_config(const std::vector<KeyValue>& file_entries, const std::vector<KeyValue>& overrides) {
    RunConfig c;
    Layout l;
    const auto& table = setters();
    for (const auto* list : {&file_entries, &overrides})
        for (const auto& [k, v] : *list) {
            const auto it = table.find(k);
            if (it == table.end()) throw ConfigError("unknown key '" + k + "'");
            it->second(c, l, k, v);
        }

    auto& sc = c.spec.scenario;
    try {
        sc.cfg.validate();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        throw ConfigError(std::string(msg.rfind("n_cp", 0) == 0 ? "key 'n_cp': " : "key 'n_fft': ") + msg);
    }
    const int half = sc.cfg.n_fft / 2;
    if (l.interferer > half) bad("interferer_subcarriers", "must not exceed n_fft/2");
    if (l.guardband + l.signal > half - 1) bad("signal_subcarriers", "signal subcarriers plus guardband exceed n_fft/2 - 1");
    sc.link2 = LinkSpec{SubcarrierSet::range(1 + l.guardband, l.guardband + l.signal), l.p2, LinkRole::signal};
    sc.link1 = LinkSpec{SubcarrierSet::range(-l.interferer + 1, 0), l.p2 * from_db(c.p_r_db), LinkRole::interferer};
    sc.noise_power_per_subcarrier = l.p2 * from_db(l.noise_db);
    if (l.channel == "non_fading") sc.channel = ChannelModel::non_fading();
    else if (l.channel == "rayleigh") sc.channel = ChannelModel::rayleigh(l.tie);
    else sc.channel = ChannelModel::rician(l.k_factor, l.tie);

    try {
        sc.mismatch.validate(sc.cfg);
    } catch (const ConfigError& e) {
        bad("tau", e.what());
    }
    try {
        sc.freq_offset.validate();
    } catch (const ConfigError& e) {
        bad(sc.freq_offset.mode == FreqOffsetModel::Mode::uniform ? "epsilon_max" : "epsilon", e.what());
    }
    if (c.spec.total_subcarriers > sc.cfg.n_fft) bad("total_subcarriers", "must not exceed n_fft");
    if (!(c.spec.overhead > 0.0 && c.spec.overhead <= 0.5)) bad("overhead", "must lie in (0, 0.5]");
    for (double e : c.spec.eps_max)
        if (!(e >= 0.0 && e <= 0.5)) bad("eps_max_list", "entries must lie in [0, 0.5]");
    for (double k : c.spec.k_factors)
        if (!(k >= 0.0)) bad("k_list", "entries must be non-negative");
    if (!(c.spec.throughput_eps_max >= 0.0 && c.spec.throughput_eps_max <= 0.5))
        bad("throughput_eps_max", "must lie in [0, 0.5]");
    for (int w : c.spec.extra_interferer_widths)
        if (w > half) bad("interferer_widths", "widths must not exceed n_fft/2");
    if (c.experiment != "reproduce_paper") c.spec.kind = parse_experiment_kind(c.experiment);
    c.spec.validate();
    return c;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& file, const std::vector<KeyValue>& overrides) {
    std::vector<KeyValue> entries;
    if (file) {
        std::ifstream is(*file, std::ios::binary);
        if (!is) throw ConfigError("cannot read config file " + file->string());
        std::stringstream ss;
        ss << is.rdbuf();
        entries = parse_key_values(ss.str());
    }
    return parse_config(entries, overrides);
}

}  // namespace xband
