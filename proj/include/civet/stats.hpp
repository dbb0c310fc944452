#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace civet::stats {

/// Percentile by linear interpolation between closest order statistics
/// (inclusive): position q*(n-1) into the sorted values.
inline double percentile_sorted(std::span<const double> sorted, double q) {
    const size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double pos = q * static_cast<double>(n - 1);
    size_t lo = static_cast<size_t>(pos);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double mean(std::span<const double> xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Sample standard deviation (n-1 denominator); 0 for a single value.
inline double sample_std(std::span<const double> xs) {
    const size_t n = xs.size();
    if (n < 2) return 0.0;
    double m = mean(xs);
    double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

} // namespace civet::stats
