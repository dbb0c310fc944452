#pragma once

#include "civet/metrics.hpp"
#include "civet/records.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace civet {

struct DispersionRecord {
    std::string domain;
    size_t n_samples = 0;
    double geometric_mean_share = 0; // exp(mean of log shares)
    double log_std = 0;              // std of natural-log shares, n-1 denominator
    double fold_factor = 1;          // exp(log_std)
};

struct DispersionSummary {
    std::string platform;
    std::string topic; // "(all)" when aggregated across topics
    double mean_log_std = 0;
    double median_log_std = 0;
    size_t n_domains = 0;
};

struct RankShareRow {
    size_t rank = 0; // 1-based
    std::string domain;
    double share = 0;
};

struct RankShareTable {
    SampleKey key;
    std::vector<RankShareRow> rows; // descending share, ties lexicographic
};

struct LogLogFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    size_t n_rows = 0;
};

/// Dispersion of one domain's share across samples. All shares must be
/// positive: callers restrict to frequently cited domains first, a zero
/// share is a hard ZeroShare error rather than a silent drop.
DispersionRecord log_std(const std::string& domain, const std::vector<double>& shares);

DispersionSummary summarize_dispersion(const std::string& platform, const std::string& topic,
                                       const std::vector<DispersionRecord>& records);

RankShareTable rank_share_table(const SampleMetrics& metrics);

/// OLS of ln(share) on ln(rank) over rows with rank in [rank_lo, rank_hi].
LogLogFit loglog_fit(const RankShareTable& table, size_t rank_lo, size_t rank_hi);

} // namespace civet
