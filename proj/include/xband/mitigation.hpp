// mitigation.hpp - transmitter-side subcarrier coders against cross-band interference
//
//   fgb: null subcarriers between the two links
//   isc: antipodal pairs s(k) = -s(k-1) within one symbol
//   csc: s_II(k) = s_I(k) e^{i 2 pi k N_CP / N} across two consecutive symbols

#pragma once

#include "xband/ofdm.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace xband {

using SubcarrierPair = std::pair<int, int>;  // (k-1, k)

struct MitigationScheme {
    enum class Kind { none, fgb, isc, csc };
    Kind kind = Kind::none;
    int gap = 0;                       // fgb
    std::vector<SubcarrierPair> pairs; // isc
    std::optional<SubcarrierSet> coded; // csc

    static MitigationScheme none() { return {}; }
    static MitigationScheme fgb(int gap) { return {Kind::fgb, gap, {}, std::nullopt}; }
    static MitigationScheme isc(std::vector<SubcarrierPair> pairs) { return {Kind::isc, 0, std::move(pairs), std::nullopt}; }
    static MitigationScheme csc(SubcarrierSet coded) { return {Kind::csc, 0, {}, std::move(coded)}; }

    /// Checks the scheme against the link's subcarrier set. Throws ArgumentError.
    void validate(const SubcarrierSet& link) const;
    /// Redundant slots per symbol, averaged (isc: one per pair, csc: half the coded set).
    double overhead_slots_per_symbol() const;
};

const char* to_string(MitigationScheme::Kind kind);

/// Splits `total_span` subcarriers {-(total/2)+1, ...} into two contiguous sets separated by
/// `gap` nulls. Link 1 takes the lower floor((total-gap)/2), link 2 the upper ceil(...).
std::pair<SubcarrierSet, SubcarrierSet> fgb_allocate(int total_span, int gap);

/// Throws ArgumentError unless pairs are adjacent (k-1, k), disjoint and inside `support`.
void check_pairs(const std::vector<SubcarrierPair>& pairs, const SubcarrierSet& support);

/// Upper member of each pair becomes the negation of the lower.
FreqSymbol isc_encode(const FreqSymbol& data, const std::vector<SubcarrierPair>& pairs);

/// Difference combining (r(k-1) - r(k)) / 2 on each pair's lower index; other indices pass
/// through. The output drops the upper index of every pair.
FreqSymbol isc_decode(const FreqSymbol& received, const std::vector<SubcarrierPair>& pairs);

/// `n` disjoint pairs from the end of `set` nearest the other link: from the top when
/// `from_top`, else from the bottom. Throws if the set is too small.
std::vector<SubcarrierPair> edge_pairs(const SubcarrierSet& set, int n, bool from_top);
/// `count` indices from one end of `set`; nullopt for count 0.
std::optional<SubcarrierSet> edge_subset(const SubcarrierSet& set, int count, bool from_top);

/// Phase-continuity factor e^{i 2 pi k N_CP / N}.
Complex csc_phase(int k, const OfdmConfig& cfg);

/// Overwrites the second symbol on `coded` with the phase-compensated first symbol.
std::pair<FreqSymbol, FreqSymbol> csc_encode(const std::pair<FreqSymbol, FreqSymbol>& sym_pair,
                                             const SubcarrierSet& coded, const OfdmConfig& cfg);

enum class CscSelector { genie, energy_metric };

struct CscDecodeOptions {
    CscSelector selector = CscSelector::genie;
    /// genie: ground-truth interference power on `coded` in each of the two symbols.
    std::optional<std::pair<double, double>> interference_power;
    /// energy_metric: constellation power used for slicing.
    double power = 1.0;
};

/// Picks, for the coded subcarriers, the less interfered of the two received symbols
/// (second one phase-decompensated). Output support is `coded`.
FreqSymbol csc_decode(const std::pair<FreqSymbol, FreqSymbol>& received, const SubcarrierSet& coded,
                      const OfdmConfig& cfg, const CscDecodeOptions& opts);

}  // namespace xband
