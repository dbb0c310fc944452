#pragma once

#include "civet/error.hpp"
#include "civet/records.hpp"
#include "civet/rng.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace civet {

enum class Metric { share, prevalence };

const char* metric_name(Metric m);

inline constexpr double kDefaultTargetWidthShare = 0.05;
inline constexpr double kDefaultTargetWidthPrevalence = 0.15;
inline constexpr int kDefaultReplicates = 1000;
inline constexpr double kDefaultAlpha = 0.05;

struct BootstrapCI {
    Metric metric = Metric::share;
    std::string domain;
    double point = 0;  // from the full sample, never from the replicates
    double lower = 0;
    double upper = 0;
    double width = 0;
    int replicates = 0;
    double alpha = kDefaultAlpha;
    uint64_t seed = 0;
};

struct GenericCI {
    double point = 0;
    double lower = 0;
    double upper = 0;
    double width = 0;
    int replicates = 0; // retained replicates
    int excluded = 0;   // undefined replicates dropped (when allowed)
    double alpha = kDefaultAlpha;
    uint64_t seed = 0;
};

struct ConvergencePoint {
    size_t n = 0;
    double max_ci_width = 0;
    double reference_width = 0;
    bool crossed_target = false;
};

struct ConvergenceCurve {
    Metric metric = Metric::share;
    double target_width = 0;
    double p_anchor = 0;
    std::vector<ConvergencePoint> points;        // ascending in n, full grid always
    std::optional<size_t> crossing_n;            // first n with width <= target
};

enum class SubsampleOrder { prefix, random };

/// 1-based percentile rank into B sorted replicate values: ceil(B * q),
/// guarded against floating-point spill on exact multiples.
size_t percentile_rank(size_t b, double q);

/// Expected 95% CI width for an IID proportion: 3.92 * sqrt(p*(1-p)/n).
double reference_width(double p_anchor, size_t n);

/// Percentile-bootstrap CI for one domain's share or prevalence. Replicates
/// resample the N responses with replacement; share recomputes numerator and
/// denominator per replicate. Deterministic in (sample, B, alpha, seed) for
/// either execution policy.
BootstrapCI bootstrap_metric_ci(const Sample& sample, Metric metric, const std::string& domain,
                                int b = kDefaultReplicates, double alpha = kDefaultAlpha,
                                uint64_t seed = 0, Exec exec = Exec::parallel);

/// CIs for a whole domain set from one shared replicate stream, so that
/// cross-domain comparisons see identical sampling noise. Agrees bit-exactly
/// with per-domain bootstrap_metric_ci calls under the same seed.
std::map<std::string, BootstrapCI> bootstrap_all_domains(
    const Sample& sample, Metric metric, const std::set<std::string>& domains,
    int b = kDefaultReplicates, double alpha = kDefaultAlpha, uint64_t seed = 0,
    Exec exec = Exec::parallel);

/// Default subsample grid {10, 20, ..., N} (always ending at N).
std::vector<size_t> default_grid(size_t n_responses, size_t step = 10);

/// Max CI width across the domain set as a function of subsample size, with
/// the analytic reference curve. Computes the full grid; crossing_n is
/// reported but never truncates the computation.
ConvergenceCurve convergence_curve(const Sample& sample, Metric metric,
                                   const std::set<std::string>& domains,
                                   const std::vector<size_t>& grid, int b = kDefaultReplicates,
                                   double alpha = kDefaultAlpha, uint64_t seed = 0,
                                   SubsampleOrder order = SubsampleOrder::prefix,
                                   std::optional<double> target_width = std::nullopt,
                                   std::optional<double> anchor_override = std::nullopt,
                                   size_t draws = 1, Exec exec = Exec::parallel);

/// Percentile bootstrap of an arbitrary statistic over with-replacement
/// resamples of `items`. A statistic that throws Error is rethrown as
/// StatisticUndefined with the replicate index, unless allow_undefined is
/// set, in which case the replicate is excluded and counted.
template <typename T, typename F>
GenericCI bootstrap_generic(const std::vector<T>& items, F&& statistic, int b,
                            double alpha = kDefaultAlpha, uint64_t seed = 0,
                            bool allow_undefined = false, Exec exec = Exec::parallel) {
    if (items.size() < 2) {
        throw Error(errc::invalid_argument, "bootstrap_generic needs at least two items");
    }
    if (b < 1) throw Error(errc::invalid_argument, "replicate count must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(errc::invalid_argument, "alpha must lie in (0, 1)");
    }

    GenericCI ci;
    ci.alpha = alpha;
    ci.seed = seed;
    ci.point = statistic(items);

    const size_t n = items.size();
    std::vector<double> values(static_cast<size_t>(b));
    std::vector<uint8_t> defined(static_cast<size_t>(b), 1);
    std::vector<std::string> first_error(static_cast<size_t>(b));

    const bool par = exec == Exec::parallel && static_cast<size_t>(b) * n >= 1 << 14;
#pragma omp parallel if (par)
    {
        std::vector<T> resampled;
        resampled.reserve(n);
#pragma omp for schedule(static)
        for (int k = 0; k < b; ++k) {
            SplitMix64 rng(split_stream(seed, static_cast<uint64_t>(k)));
            resampled.clear();
            for (size_t i = 0; i < n; ++i) {
                resampled.push_back(items[rng.next_below(n)]);
            }
            try {
                values[static_cast<size_t>(k)] = statistic(resampled);
            } catch (const Error& e) {
                defined[static_cast<size_t>(k)] = 0;
                first_error[static_cast<size_t>(k)] = e.what();
            }
        }
    }

    std::vector<double> retained;
    retained.reserve(static_cast<size_t>(b));
    for (int k = 0; k < b; ++k) {
        if (defined[static_cast<size_t>(k)]) {
            retained.push_back(values[static_cast<size_t>(k)]);
        } else if (!allow_undefined) {
            throw Error(errc::statistic_undefined,
                        "replicate " + std::to_string(k) + ": " + first_error[static_cast<size_t>(k)]);
        } else {
            ++ci.excluded;
        }
    }
    if (retained.empty()) {
        throw Error(errc::degenerate_resample, "every replicate was undefined");
    }
    std::sort(retained.begin(), retained.end());
    ci.replicates = static_cast<int>(retained.size());
    ci.lower = retained[percentile_rank(retained.size(), alpha / 2) - 1];
    ci.upper = retained[percentile_rank(retained.size(), 1 - alpha / 2) - 1];
    ci.width = ci.upper - ci.lower;
    return ci;
}

} // namespace civet
