#pragma once

#include "civet/dataset.hpp"
#include "civet/records.hpp"

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace civet {

inline constexpr size_t kJaccardHistogramBins = 20; // width 0.05 over [0,1]

struct PairRecord {
    std::string query_id;
    std::string job_a;
    std::string job_b;
    double jaccard = 0;
    size_t intersection = 0;
    size_t union_size = 0;
};

struct OverlapSummary {
    std::string platform;
    std::string topic;
    size_t n_queries = 0;
    size_t n_pairs = 0;
    double median_jaccard = 0;
    double identical_rate = 0;    // proportion of pairs with J == 1 exactly
    double zero_overlap_rate = 0; // proportion with J == 0 exactly
    double mean_intersection = 0;
    double mean_unique_domains = 0;
    std::array<size_t, kJaccardHistogramBins> histogram{};
};

struct SimilarityBin {
    size_t modal_citation_count = 0;
    double median_jaccard = 0;
    double band_lo = 0; // interquartile band of pair Jaccards in the bin
    double band_hi = 0;
    size_t pair_count = 0;
};

struct SimilarityByCount {
    std::vector<SimilarityBin> bins; // ascending by modal count
};

/// Deduplicated citation domains of one response; empty set when uncited.
std::set<std::string> domain_set(const ResponseRecord& response);

/// J(X, Y) = |X ∩ Y| / |X ∪ Y|; two empty sets count as identical (J = 1).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// One value per unordered pair of runs. Throws SingleRun below two runs.
std::vector<double> pairwise_jaccard(const std::vector<const ResponseRecord*>& runs);

OverlapSummary overlap_summary(const std::vector<QueryRuns>& grouped);

/// Per-pair records in deterministic order (query_id, then run order).
std::vector<PairRecord> overlap_pairs(const std::vector<QueryRuns>& grouped);

/// Pairs binned by the query's modal citations-per-response across runs
/// (ties resolved to the smallest mode).
SimilarityByCount similarity_by_count(const std::vector<QueryRuns>& grouped);

} // namespace civet
