#include "xband/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace xband {

const char* to_string(MitigationScheme::Kind kind) {
    switch (kind) {
        case MitigationScheme::Kind::none: return "none";
        case MitigationScheme::Kind::fgb: return "fgb";
        case MitigationScheme::Kind::isc: return "isc";
        case MitigationScheme::Kind::csc: return "csc";
    }
    return "?";
}

void check_pairs(const std::vector<SubcarrierPair>& pairs, const SubcarrierSet& support) {
    std::set<int> used;
    for (const auto& [lo, hi] : pairs) {
        if (hi != lo + 1) throw ArgumentError("ISC pair (" + std::to_string(lo) + ", " + std::to_string(hi) + ") is not adjacent");
        if (!support.contains(lo) || !support.contains(hi))
            throw ArgumentError("ISC pair (" + std::to_string(lo) + ", " + std::to_string(hi) + ") outside the symbol support");
        if (!used.insert(lo).second || !used.insert(hi).second) throw ArgumentError("ISC pairs overlap");
    }
}

void MitigationScheme::validate(const SubcarrierSet& link) const {
    switch (kind) {
        case Kind::none: break;
        case Kind::fgb:
            if (gap < 0) throw ArgumentError("guardband must be non-negative");
            break;
        case Kind::isc: check_pairs(pairs, link); break;
        case Kind::csc:
            if (!coded) throw ArgumentError("CSC scheme needs a coded set");
            for (int k : *coded)
                if (!link.contains(k)) throw ArgumentError("CSC coded subcarrier " + std::to_string(k) + " not in link set");
            break;
    }
}

double MitigationScheme::overhead_slots_per_symbol() const {
    switch (kind) {
        case Kind::isc: return static_cast<double>(pairs.size());
        case Kind::csc: return coded ? coded->size() / 2.0 : 0.0;
        default: return 0.0;
    }
}

std::pair<SubcarrierSet, SubcarrierSet> fgb_allocate(int total_span, int gap) {
    if (gap < 0) throw ArgumentError("guardband must be non-negative");
    if (total_span - gap < 2)
        throw ArgumentError("cannot split " + std::to_string(total_span) + " subcarriers around a gap of " +
                            std::to_string(gap));
    const int rest = total_span - gap;
    const int n1 = rest / 2;
    const int n2 = rest - n1;
    const int first = -(total_span / 2) + 1;
    return {SubcarrierSet::range(first, first + n1 - 1), SubcarrierSet::range(first + n1 + gap, first + n1 + gap + n2 - 1)};
}

FreqSymbol isc_encode(const FreqSymbol& data, const std::vector<SubcarrierPair>& pairs) {
    check_pairs(pairs, data.support);
    FreqSymbol out = data;
    for (const auto& [lo, hi] : pairs) out[hi] = -data.at(lo);
    return out;
}

FreqSymbol isc_decode(const FreqSymbol& received, const std::vector<SubcarrierPair>& pairs) {
    check_pairs(pairs, received.support);
    std::set<int> upper;
    for (const auto& p : pairs) upper.insert(p.second);
    std::vector<int> keep;
    for (int k : received.support)
        if (!upper.count(k)) keep.push_back(k);
    FreqSymbol out{SubcarrierSet(keep)};
    for (int k : keep) out[k] = received.at(k);
    for (const auto& [lo, hi] : pairs) out[lo] = (received.at(lo) - received.at(hi)) / 2.0;
    return out;
}

std::vector<SubcarrierPair> edge_pairs(const SubcarrierSet& set, int n, bool from_top) {
    if (n < 0 || 2 * n > static_cast<int>(set.size())) throw ArgumentError("not enough subcarriers for the requested ISC pairs");
    std::vector<SubcarrierPair> out;
    const auto& idx = set.indices();
    const int sz = static_cast<int>(idx.size());
    for (int p = 0; p < n; ++p) {
        if (from_top)
            out.emplace_back(idx[static_cast<std::size_t>(sz - 2 - 2 * p)], idx[static_cast<std::size_t>(sz - 1 - 2 * p)]);
        else
            out.emplace_back(idx[static_cast<std::size_t>(2 * p)], idx[static_cast<std::size_t>(2 * p + 1)]);
    }
    check_pairs(out, set);
    return out;
}

std::optional<SubcarrierSet> edge_subset(const SubcarrierSet& set, int count, bool from_top) {
    if (count < 0 || count > static_cast<int>(set.size())) throw ArgumentError("edge subset larger than the set");
    if (count == 0) return std::nullopt;
    const auto& idx = set.indices();
    if (from_top) return SubcarrierSet(std::vector<int>(idx.end() - count, idx.end()));
    return SubcarrierSet(std::vector<int>(idx.begin(), idx.begin() + count));
}

Complex csc_phase(int k, const OfdmConfig& cfg) {
    return std::polar(1.0, 2.0 * std::numbers::pi * k * cfg.n_cp / cfg.n_fft);
}

std::pair<FreqSymbol, FreqSymbol> csc_encode(const std::pair<FreqSymbol, FreqSymbol>& sym_pair,
                                             const SubcarrierSet& coded, const OfdmConfig& cfg) {
    auto out = sym_pair;
    for (int k : coded) {
        if (!sym_pair.first.support.contains(k) || !sym_pair.second.support.contains(k))
            throw ArgumentError("CSC coded subcarrier " + std::to_string(k) + " not in symbol support");
        out.second[k] = sym_pair.first.at(k) * csc_phase(k, cfg);
    }
    return out;
}

FreqSymbol csc_decode(const std::pair<FreqSymbol, FreqSymbol>& received, const SubcarrierSet& coded,
                      const OfdmConfig& cfg, const CscDecodeOptions& opts) {
    FreqSymbol first(coded), second(coded);
    for (int k : coded) {
        if (!received.first.support.contains(k) || !received.second.support.contains(k))
            throw ArgumentError("CSC coded subcarrier " + std::to_string(k) + " not in received support");
        first[k] = received.first.at(k);
        second[k] = received.second.at(k) * std::conj(csc_phase(k, cfg));
    }
    bool use_second = false;
    if (opts.selector == CscSelector::genie) {
        if (!opts.interference_power) throw ArgumentError("genie selection needs ground-truth interference power");
        use_second = opts.interference_power->second < opts.interference_power->first;
    } else {
        double r1 = 0.0, r2 = 0.0;
        for (std::size_t i = 0; i < coded.size(); ++i) {
            r1 += std::norm(first.values[i] - qpsk_slice(first.values[i], opts.power));
            r2 += std::norm(second.values[i] - qpsk_slice(second.values[i], opts.power));
        }
        use_second = r2 < r1;
    }
    return use_second ? second : first;
}

}  // namespace xband
