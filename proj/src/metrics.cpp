#include "civet/metrics.hpp"

#include "civet/error.hpp"
#include "civet/stats.hpp"

#include <algorithm>
#include <cmath>

namespace civet {

SampleMetrics compute_sample_metrics(const Sample& sample) {
    if (sample.responses.empty()) {
        throw Error(errc::empty_sample, "sample " + sample.key.job_id + " has no responses");
    }

    SampleMetrics m;
    m.key = sample.key;
    m.n_responses = sample.n_responses();

    for (const ResponseRecord& r : sample.responses) {
        std::map<std::string, size_t> in_response;
        for (const CitationRef& c : r.citations) {
            ++in_response[c.domain];
            ++m.total_citations;
        }
        for (const auto& [domain, count] : in_response) {
            DomainMetrics& d = m.per_domain[domain];
            d.domain = domain;
            d.count += count;
            d.responses_citing += 1;
        }
    }

    const double n = static_cast<double>(m.n_responses);
    const double total = static_cast<double>(m.total_citations);
    for (auto& [domain, d] : m.per_domain) {
        d.share = static_cast<double>(d.count) / total; // per_domain empty when total == 0
        d.prevalence = static_cast<double>(d.responses_citing) / n;
    }
    return m;
}

static CitationSummary summary_of_counts(std::vector<double>& counts) {
    std::sort(counts.begin(), counts.end());
    CitationSummary s;
    s.mean = stats::mean(counts);
    s.std = stats::sample_std(counts);
    s.min = counts.front();
    s.max = counts.back();
    s.p25 = stats::percentile_sorted(counts, 0.25);
    s.median = stats::percentile_sorted(counts, 0.50);
    s.p75 = stats::percentile_sorted(counts, 0.75);
    s.p95 = stats::percentile_sorted(counts, 0.95);
    return s;
}

CitationSummary citation_summary(const Sample& sample) {
    if (sample.responses.empty()) {
        throw Error(errc::empty_sample, "sample " + sample.key.job_id + " has no responses");
    }
    std::vector<double> counts;
    counts.reserve(sample.responses.size());
    for (const ResponseRecord& r : sample.responses) {
        counts.push_back(static_cast<double>(r.citations.size()));
    }
    return summary_of_counts(counts);
}

CitationSummary citation_summary_pooled(const std::vector<const Sample*>& samples) {
    std::vector<double> counts;
    for (const Sample* s : samples) {
        for (const ResponseRecord& r : s->responses) {
            counts.push_back(static_cast<double>(r.citations.size()));
        }
    }
    if (counts.empty()) throw Error(errc::empty_sample, "no responses in any sample");
    return summary_of_counts(counts);
}

FrequentlyCitedSet classify_frequently_cited(const std::vector<const Sample*>& samples,
                                             double min_fraction) {
    if (samples.size() < 2) {
        throw Error(errc::invalid_argument, "need at least two samples to classify");
    }
    for (const Sample* s : samples) {
        if (s->key.platform != samples.front()->key.platform ||
            s->key.topic != samples.front()->key.topic) {
            throw Error(errc::mixed_keys, "samples span multiple (platform, topic) pairs");
        }
    }

    FrequentlyCitedSet fc;
    fc.platform = samples.front()->key.platform;
    fc.topic = samples.front()->key.topic;
    fc.n_samples = samples.size();

    std::map<std::string, size_t> appearances;
    for (const Sample* s : samples) {
        std::set<std::string> domains;
        for (const ResponseRecord& r : s->responses) {
            for (const CitationRef& c : r.citations) domains.insert(c.domain);
        }
        for (const auto& d : domains) ++appearances[d];
    }

    for (size_t k = 1; k <= fc.n_samples; ++k) fc.appearance_histogram[k] = 0;
    const size_t needed = static_cast<size_t>(
        std::ceil(min_fraction * static_cast<double>(fc.n_samples) - 1e-9));
    for (const auto& [domain, k] : appearances) {
        ++fc.appearance_histogram[k];
        if (k >= needed) fc.domains.insert(domain);
    }
    return fc;
}

} // namespace civet
