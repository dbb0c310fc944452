#include "civet/overlap.hpp"

#include "civet/error.hpp"
#include "civet/stats.hpp"

#include <algorithm>
#include <map>

namespace civet {

std::set<std::string> domain_set(const ResponseRecord& response) {
    std::set<std::string> domains;
    for (const CitationRef& c : response.citations) domains.insert(c.domain);
    return domains;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    size_t inter = 0;
    for (const auto& d : a) inter += b.count(d);
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<double> pairwise_jaccard(const std::vector<const ResponseRecord*>& runs) {
    if (runs.size() < 2) {
        throw Error(errc::single_run, "need at least two runs of the query");
    }
    std::vector<std::set<std::string>> sets;
    sets.reserve(runs.size());
    for (const ResponseRecord* r : runs) sets.push_back(domain_set(*r));

    std::vector<double> values;
    values.reserve(runs.size() * (runs.size() - 1) / 2);
    for (size_t i = 0; i < sets.size(); ++i) {
        for (size_t j = i + 1; j < sets.size(); ++j) {
            values.push_back(jaccard(sets[i], sets[j]));
        }
    }
    return values;
}

std::vector<PairRecord> overlap_pairs(const std::vector<QueryRuns>& grouped) {
    std::vector<PairRecord> pairs;
    for (const QueryRuns& q : grouped) {
        std::vector<std::set<std::string>> sets;
        sets.reserve(q.runs.size());
        for (const auto& [sample, resp] : q.runs) sets.push_back(domain_set(*resp));
        for (size_t i = 0; i < sets.size(); ++i) {
            for (size_t j = i + 1; j < sets.size(); ++j) {
                PairRecord p;
                p.query_id = q.query_id;
                p.job_a = q.runs[i].first->key.job_id;
                p.job_b = q.runs[j].first->key.job_id;
                size_t inter = 0;
                for (const auto& d : sets[i]) inter += sets[j].count(d);
                p.intersection = inter;
                p.union_size = sets[i].size() + sets[j].size() - inter;
                p.jaccard = (sets[i].empty() && sets[j].empty())
                                ? 1.0
                                : static_cast<double>(inter) / static_cast<double>(p.union_size);
                pairs.push_back(std::move(p));
            }
        }
    }
    return pairs;
}

OverlapSummary overlap_summary(const std::vector<QueryRuns>& grouped) {
    if (grouped.empty()) throw Error(errc::no_repeated_queries, "no repeated queries");

    OverlapSummary s;
    s.platform = grouped.front().runs.front().first->key.platform;
    s.topic = grouped.front().runs.front().first->key.topic;
    s.n_queries = grouped.size();

    std::vector<PairRecord> pairs = overlap_pairs(grouped);
    s.n_pairs = pairs.size();
    if (pairs.empty()) throw Error(errc::no_repeated_queries, "no pairs to compare");

    std::vector<double> values;
    values.reserve(pairs.size());
    size_t identical = 0, zero = 0;
    double inter_sum = 0, union_sum = 0;
    for (const PairRecord& p : pairs) {
        values.push_back(p.jaccard);
        if (p.jaccard == 1.0) ++identical;
        if (p.jaccard == 0.0) ++zero;
        inter_sum += static_cast<double>(p.intersection);
        union_sum += static_cast<double>(p.union_size);
        size_t bin = std::min(kJaccardHistogramBins - 1,
                              static_cast<size_t>(p.jaccard * kJaccardHistogramBins));
        ++s.histogram[bin];
    }
    std::sort(values.begin(), values.end());
    s.median_jaccard = stats::percentile_sorted(values, 0.5);
    s.identical_rate = static_cast<double>(identical) / static_cast<double>(pairs.size());
    s.zero_overlap_rate = static_cast<double>(zero) / static_cast<double>(pairs.size());
    s.mean_intersection = inter_sum / static_cast<double>(pairs.size());
    s.mean_unique_domains = union_sum / static_cast<double>(pairs.size());
    return s;
}

SimilarityByCount similarity_by_count(const std::vector<QueryRuns>& grouped) {
    if (grouped.empty()) throw Error(errc::no_repeated_queries, "no repeated queries");

    std::map<size_t, std::vector<double>> by_mode;
    for (const QueryRuns& q : grouped) {
        std::map<size_t, size_t> count_freq;
        for (const auto& [sample, resp] : q.runs) ++count_freq[resp->citations.size()];
        size_t mode = 0, best = 0;
        for (const auto& [count, freq] : count_freq) { // ascending: ties keep smallest
            if (freq > best) {
                best = freq;
                mode = count;
            }
        }
        if (q.runs.size() < 2) continue;
        std::vector<const ResponseRecord*> runs;
        for (const auto& [sample, resp] : q.runs) runs.push_back(resp);
        for (double v : pairwise_jaccard(runs)) by_mode[mode].push_back(v);
    }

    SimilarityByCount result;
    for (auto& [mode, values] : by_mode) {
        std::sort(values.begin(), values.end());
        SimilarityBin bin;
        bin.modal_citation_count = mode;
        bin.pair_count = values.size();
        bin.median_jaccard = stats::percentile_sorted(values, 0.5);
        bin.band_lo = stats::percentile_sorted(values, 0.25);
        bin.band_hi = stats::percentile_sorted(values, 0.75);
        result.bins.push_back(bin);
    }
    return result;
}

} // namespace civet
