#include "xband/ofdm.hpp"

#include "xband/fft.hpp"

#include <algorithm>
#include <cmath>

namespace xband {

void OfdmConfig::validate() const {
    if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0)
        throw ConfigError("n_fft must be a power of two >= 2, got " + std::to_string(n_fft));
    if (n_cp < 0 || n_cp >= n_fft)
        throw ConfigError("n_cp must satisfy 0 <= n_cp < n_fft, got " + std::to_string(n_cp));
    if (!(subcarrier_spacing_hz > 0.0)) throw ConfigError("subcarrier_spacing_hz must be positive");
}

SubcarrierSet::SubcarrierSet(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw ArgumentError("subcarrier set must not be empty");
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw ArgumentError("subcarrier set contains duplicates");
}

SubcarrierSet SubcarrierSet::range(int first, int last) {
    if (last < first) throw ArgumentError("subcarrier range is empty");
    std::vector<int> v;
    for (int k = first; k <= last; ++k) v.push_back(k);
    return SubcarrierSet(std::move(v));
}

bool SubcarrierSet::contains(int k) const { return std::binary_search(indices_.begin(), indices_.end(), k); }

int SubcarrierSet::position(int k) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), k);
    if (it == indices_.end() || *it != k) return -1;
    return static_cast<int>(it - indices_.begin());
}

bool SubcarrierSet::disjoint(const SubcarrierSet& other) const {
    auto a = indices_.begin();
    auto b = other.indices_.begin();
    while (a != indices_.end() && b != other.indices_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

bool SubcarrierSet::contiguous() const {
    return !indices_.empty() && indices_.back() - indices_.front() + 1 == static_cast<int>(indices_.size());
}

void SubcarrierSet::check_fits(int n_fft) const {
    for (int k : indices_)
        if (k < -n_fft / 2 || k >= n_fft / 2)
            throw ArgumentError("subcarrier " + std::to_string(k) + " outside [-N/2, N/2)");
}

void LinkSpec::validate(const OfdmConfig& cfg) const {
    if (subcarriers.empty()) throw ConfigError("link has no subcarriers");
    subcarriers.check_fits(cfg.n_fft);
    if (!(power_per_subcarrier > 0.0)) throw ConfigError("link power_per_subcarrier must be positive");
}

FreqSymbol::FreqSymbol(SubcarrierSet set, std::vector<Complex> v) : support(std::move(set)), values(std::move(v)) {
    if (values.size() != support.size()) throw ArgumentError("FreqSymbol: value count does not match support");
}

FreqSymbol::FreqSymbol(SubcarrierSet set) : support(std::move(set)), values(support.size()) {}

Complex FreqSymbol::at(int k) const {
    int p = support.position(k);
    return p < 0 ? Complex{} : values[static_cast<std::size_t>(p)];
}

Complex& FreqSymbol::operator[](int k) {
    int p = support.position(k);
    if (p < 0) throw ArgumentError("subcarrier " + std::to_string(k) + " not in symbol support");
    return values[static_cast<std::size_t>(p)];
}

Complex qpsk_point(std::uint8_t b0, std::uint8_t b1, double power) {
    const double a = std::sqrt(power / 2.0);
    return {b1 ? -a : a, b0 ? -a : a};
}

void qpsk_decide(Complex x, std::uint8_t& b0, std::uint8_t& b1) {
    b0 = x.imag() < 0.0;
    b1 = x.real() < 0.0;
}

Complex qpsk_slice(Complex x, double power) {
    const double a = std::sqrt(power / 2.0);
    return {x.real() < 0.0 ? -a : a, x.imag() < 0.0 ? -a : a};
}

FreqSymbol map_bits(std::span<const std::uint8_t> bits, const LinkSpec& link) {
    const std::size_t n = link.subcarriers.size();
    if (bits.size() != 2 * n)
        throw ArgumentError("map_bits: expected " + std::to_string(2 * n) + " bits, got " +
                            std::to_string(bits.size()));
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = qpsk_point(bits[2 * i] & 1u, bits[2 * i + 1] & 1u, link.power_per_subcarrier);
    return FreqSymbol(link.subcarriers, std::move(v));
}

std::vector<std::uint8_t> demap_bits(const FreqSymbol& sym) {
    std::vector<std::uint8_t> bits(2 * sym.values.size());
    for (std::size_t i = 0; i < sym.values.size(); ++i) qpsk_decide(sym.values[i], bits[2 * i], bits[2 * i + 1]);
    return bits;
}

TimeSymbol ofdm_modulate(const FreqSymbol& sym, const OfdmConfig& cfg) {
    const int n = cfg.n_fft;
    sym.support.check_fits(n);
    std::vector<Complex> grid(static_cast<std::size_t>(n)), body(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < sym.values.size(); ++i)
        grid[static_cast<std::size_t>(bin_of(sym.support.indices()[i], n))] = sym.values[i];
    fft_backward(grid, body);
    const double scale = 1.0 / n;
    TimeSymbol out;
    out.samples.resize(static_cast<std::size_t>(cfg.frame_length()));
    for (int i = 0; i < n; ++i) out.samples[static_cast<std::size_t>(cfg.n_cp + i)] = body[static_cast<std::size_t>(i)] * scale;
    for (int i = 0; i < cfg.n_cp; ++i)
        out.samples[static_cast<std::size_t>(i)] = out.samples[static_cast<std::size_t>(n + i)];
    return out;
}

FreqSymbol demodulate_window(std::span<const Complex> window, const OfdmConfig& cfg, const SubcarrierSet& set) {
    const int n = cfg.n_fft;
    if (window.size() != static_cast<std::size_t>(n))
        throw ArgumentError("demodulate_window: window must hold exactly n_fft samples");
    set.check_fits(n);
    std::vector<Complex> spec(static_cast<std::size_t>(n));
    fft_forward(window, spec);
    FreqSymbol out(set);
    for (std::size_t i = 0; i < set.size(); ++i)
        out.values[i] = spec[static_cast<std::size_t>(bin_of(set.indices()[i], n))];
    return out;
}

FreqSymbol ofdm_demodulate(const TimeSymbol& sym, const OfdmConfig& cfg, const SubcarrierSet& set) {
    if (sym.samples.size() != static_cast<std::size_t>(cfg.frame_length()))
        throw ArgumentError("ofdm_demodulate: symbol must hold n_cp + n_fft samples");
    return demodulate_window(sym.body(cfg), cfg, set);
}

}  // namespace xband
