#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace urnwalk {

/// A statistic with its sub-ensemble standard error.
struct Estimate {
    double value = 0.0;
    double err = 0.0;
};

/// Standard error from per-sub-ensemble values: sample standard deviation
/// divided by sqrt(#sub-ensembles). Zero for fewer than two values.
inline double subensemble_error(std::span<const double> per_sub) {
    const std::size_t s = per_sub.size();
    if (s < 2) return 0.0;
    long double mean = 0;
    for (double v : per_sub) mean += v;
    mean /= s;
    long double ss = 0;
    for (double v : per_sub) ss += (v - mean) * (v - mean);
    return static_cast<double>(std::sqrt(ss / (s - 1)) / std::sqrt(static_cast<long double>(s)));
}

inline double plain_mean(std::span<const double> values) {
    long double m = 0;
    for (double v : values) m += v;
    return values.empty() ? 0.0 : static_cast<double>(m / values.size());
}

}  // namespace urnwalk
