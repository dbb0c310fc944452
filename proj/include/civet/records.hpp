#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace civet {

struct CitationRef {
    std::string url;
    std::string domain; // registered domain, lowercase, no scheme, no "www."

    bool operator==(const CitationRef&) const = default;
};

/// One synthesized answer: identity keys, query, timestamp, citations.
/// Citations may be empty; such responses still count toward N.
struct ResponseRecord {
    std::string platform;
    std::string topic;
    std::string job_id;
    std::string timestamp; // RFC 3339, stored verbatim; no statistic needs it
    std::string query_id;
    std::string query_text;
    std::string response_id;
    std::vector<CitationRef> citations;

    bool operator==(const ResponseRecord&) const = default;
};

struct SampleKey {
    std::string platform;
    std::string topic;
    std::string job_id;

    auto operator<=>(const SampleKey&) const = default;
};

/// A collection of responses for one (platform, topic, job): the unit over
/// which every estimator in the toolkit is computed.
struct Sample {
    SampleKey key;
    std::vector<ResponseRecord> responses;

    size_t n_responses() const { return responses.size(); }

    bool operator==(const Sample&) const = default;
};

struct Dataset {
    std::map<SampleKey, Sample> samples;
    std::vector<std::string> provenance;

    bool same_content(const Dataset& other) const { return samples == other.samples; }
};

} // namespace civet
