#pragma once

#include "civet/metrics.hpp"
#include "civet/records.hpp"
#include "civet/resample.hpp"
#include "civet/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace civet {

struct StabilityThresholds {
    double sufficiency = 0.25; // max CI width for a pair to carry weight
    double stability = 0.9;    // min rho for a sufficient pair to count stable
};

struct RankStabilityResult {
    SampleKey sample_a;
    SampleKey sample_b;
    double rho = 0;
    double ci_lower = 0;
    double ci_upper = 0;
    double ci_width = 0;
    bool sufficient = false;
    bool stable = false;
    size_t n_domains = 0;
    int replicates = 0;
    int excluded_replicates = 0;
    double alpha = kDefaultAlpha;
    uint64_t seed = 0;
    std::optional<std::string> error; // pair failed; rho is NaN, flags false
};

struct StabilitySeries {
    std::vector<RankStabilityResult> consecutive; // (j, j+1) in job order
    RankStabilityResult span;                     // (first, last)
    std::optional<double> mean_rho;               // over sufficient consecutive pairs
    std::optional<double> mean_ci_width;
    std::optional<bool> span_drift_detected;      // attached by the drift module
};

/// Weighted Spearman: average-rank ties per sample, then weighted Pearson of
/// the two rank vectors. Equals classical Spearman under uniform weights.
/// Every domain must have a share in both maps (zero allowed); weights must
/// be positive and finite.
double weighted_spearman(const std::map<std::string, double>& shares_a,
                         const std::map<std::string, double>& shares_b,
                         const std::vector<std::string>& domains,
                         const std::map<std::string, double>& weights);

/// Point rho over the frequently cited set with weights (share_a+share_b)/2,
/// CI from domain-level with-replacement resampling: a domain drawn k times
/// contributes weight k*w. Undefined replicates are excluded and counted.
RankStabilityResult rank_stability_pair(const SampleMetrics& a, const SampleMetrics& b,
                                        const std::set<std::string>& domains,
                                        int b_replicates = kDefaultReplicates,
                                        double alpha = kDefaultAlpha, uint64_t seed = 0,
                                        StabilityThresholds thresholds = {},
                                        Exec exec = Exec::parallel);

/// Consecutive pairs plus the span pair over samples in job order. A failing
/// pair is recorded with its error and does not abort the series.
StabilitySeries rank_stability_series(const std::vector<SampleMetrics>& ordered,
                                      const std::set<std::string>& domains,
                                      int b_replicates = kDefaultReplicates,
                                      double alpha = kDefaultAlpha, uint64_t seed = 0,
                                      StabilityThresholds thresholds = {},
                                      Exec exec = Exec::parallel);

} // namespace civet
