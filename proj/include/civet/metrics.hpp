#pragma once

#include "civet/records.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace civet {

struct DomainMetrics {
    std::string domain;
    size_t count = 0;            // citations of the domain in the sample
    double share = 0.0;          // count / total_citations
    double prevalence = 0.0;     // responses_citing / n_responses
    size_t responses_citing = 0; // responses with at least one citation of it
};

struct SampleMetrics {
    SampleKey key;
    size_t n_responses = 0;
    size_t total_citations = 0;
    std::map<std::string, DomainMetrics> per_domain; // cited domains only
};

/// Summary of citations-per-response within one sample (Std uses n-1).
struct CitationSummary {
    double mean = 0, median = 0, std = 0;
    double min = 0, p25 = 0, p75 = 0, p95 = 0, max = 0;
};

struct FrequentlyCitedSet {
    std::string platform;
    std::string topic;
    size_t n_samples = 0;
    std::set<std::string> domains;
    // k -> number of domains cited in exactly k of the samples, k = 1..n_samples
    std::map<size_t, size_t> appearance_histogram;
};

/// Exact counts plus share/prevalence per cited domain. Throws EmptySample.
SampleMetrics compute_sample_metrics(const Sample& sample);

CitationSummary citation_summary(const Sample& sample);

/// Summary over the pooled citations-per-response counts of several samples.
CitationSummary citation_summary_pooled(const std::vector<const Sample*>& samples);

/// Domains appearing in at least ceil(min_fraction * n_samples) samples;
/// the default 1.0 keeps only domains cited in every sample.
FrequentlyCitedSet classify_frequently_cited(const std::vector<const Sample*>& samples,
                                             double min_fraction = 1.0);

} // namespace civet
