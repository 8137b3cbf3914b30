#pragma once

#include <cmath>
#include <vector>

namespace xband {

/// Linear power sampled on a continuous-frequency grid (subcarrier units).
struct PowerSpectrum {
    std::vector<double> f_grid;
    std::vector<double> values;
};

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace xband
