// ofdm.hpp - OFDM air-interface types and baseband symbol construction
//
// Subcarriers use signed indices in [-N/2, N/2) with 0 = DC; they are mapped
// to DFT bins modulo N internally. The IDFT carries the 1/N factor and the
// DFT carries none, so a subcarrier of amplitude s(k) demodulates to s(k)
// and its DTFT peak is |s(k)|.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xband {

using Complex = std::complex<double>;

/// Bad argument to an operation (wrong length, index out of range, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid static configuration (scenario, link layout, run config).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Modulation { QPSK };

constexpr int bits_per_symbol(Modulation) { return 2; }

struct OfdmConfig {
    int n_fft = 64;
    int n_cp = 16;
    double subcarrier_spacing_hz = 12.5e3;
    Modulation modulation = Modulation::QPSK;

    /// Throws ConfigError when n_fft is not a power of two or n_cp is outside [0, n_fft).
    void validate() const;

    int frame_length() const { return n_fft + n_cp; }
    /// CP overhead rho = N_CP / (N + N_CP).
    double cp_overhead() const { return static_cast<double>(n_cp) / frame_length(); }
    double symbol_duration_s() const { return 1.0 / subcarrier_spacing_hz; }
    double cp_duration_s() const { return symbol_duration_s() * n_cp / n_fft; }
};

/// Ordered, duplicate-free set of signed subcarrier indices.
class SubcarrierSet {
public:
    SubcarrierSet() = default;
    /// Sorts the indices; throws ArgumentError if empty or duplicated.
    explicit SubcarrierSet(std::vector<int> indices);

    /// Contiguous block {first, ..., last}.
    static SubcarrierSet range(int first, int last);

    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    int front() const { return indices_.front(); }
    int back() const { return indices_.back(); }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    bool contains(int k) const;
    /// Position of k in indices(), or -1.
    int position(int k) const;
    bool disjoint(const SubcarrierSet& other) const;
    bool contiguous() const;
    /// Throws ArgumentError unless every index lies in [-n_fft/2, n_fft/2).
    void check_fits(int n_fft) const;

    bool operator==(const SubcarrierSet&) const = default;

private:
    std::vector<int> indices_;
};

enum class LinkRole { signal, interferer };

struct LinkSpec {
    SubcarrierSet subcarriers;
    double power_per_subcarrier = 1.0;
    LinkRole role = LinkRole::signal;

    void validate(const OfdmConfig& cfg) const;
};

/// Frequency-domain symbol: one complex amplitude per index of `support`.
struct FreqSymbol {
    SubcarrierSet support;
    std::vector<Complex> values;

    FreqSymbol() = default;
    FreqSymbol(SubcarrierSet set, std::vector<Complex> v);
    /// All-zero symbol on `set`.
    explicit FreqSymbol(SubcarrierSet set);

    /// Value at subcarrier k; zero when k is outside the support.
    Complex at(int k) const;
    Complex& operator[](int k);
};

/// Time-domain symbol, CP prepended: n_cp + n_fft samples.
struct TimeSymbol {
    std::vector<Complex> samples;

    /// The n_fft samples after the cyclic prefix.
    std::span<const Complex> body(const OfdmConfig& cfg) const {
        return std::span<const Complex>(samples).subspan(static_cast<std::size_t>(cfg.n_cp),
                                                         static_cast<std::size_t>(cfg.n_fft));
    }
};

/// DFT bin for signed subcarrier k.
inline int bin_of(int k, int n_fft) { return ((k % n_fft) + n_fft) % n_fft; }

/// Gray-mapped QPSK: 00 -> (1+i), 01 -> (-1+i), 11 -> (-1-i), 10 -> (1-i), times sqrt(P/2).
Complex qpsk_point(std::uint8_t b0, std::uint8_t b1, double power);
/// Hard decision, inverse of qpsk_point. Writes two bits.
void qpsk_decide(Complex x, std::uint8_t& b0, std::uint8_t& b1);
/// Nearest constellation point at the given power.
Complex qpsk_slice(Complex x, double power);

/// Maps 2*|subcarriers| bits onto the link's subcarriers (first bit pair -> lowest index).
FreqSymbol map_bits(std::span<const std::uint8_t> bits, const LinkSpec& link);
/// Hard-decision demapping of every value of `sym`, in support order.
std::vector<std::uint8_t> demap_bits(const FreqSymbol& sym);

/// t(n) = (1/N) sum_k s(k) e^{i 2 pi k n / N}, CP prepended.
TimeSymbol ofdm_modulate(const FreqSymbol& sym, const OfdmConfig& cfg);
/// Strips the CP and returns s(k) = sum_n t(n) e^{-i 2 pi k n / N} on `set`.
FreqSymbol ofdm_demodulate(const TimeSymbol& sym, const OfdmConfig& cfg, const SubcarrierSet& set);
/// DFT of an already CP-stripped window of exactly n_fft samples, restricted to `set`.
FreqSymbol demodulate_window(std::span<const Complex> window, const OfdmConfig& cfg,
                             const SubcarrierSet& set);

}  // namespace xband
