#pragma once

#include "civet/records.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace test {

/// Response with one page-1 URL per listed domain (repeats allowed).
inline civet::ResponseRecord make_response(const std::string& platform, const std::string& topic,
                                           const std::string& job, const std::string& query,
                                           const std::string& response_id,
                                           std::initializer_list<const char*> domains) {
    civet::ResponseRecord r;
    r.platform = platform;
    r.topic = topic;
    r.job_id = job;
    r.timestamp = "2026-02-03T00:00:00Z";
    r.query_id = query;
    r.query_text = "query " + query;
    r.response_id = response_id;
    size_t page = 0;
    for (const char* d : domains) {
        r.citations.push_back({"https://" + std::string(d) + "/p" + std::to_string(++page), d});
    }
    return r;
}

/// Sample from per-response domain lists; query/response ids are ordinals.
inline civet::Sample make_sample(
    const std::string& job,
    std::initializer_list<std::initializer_list<const char*>> responses,
    const std::string& platform = "enginex", const std::string& topic = "topicy") {
    civet::Sample s;
    s.key = {platform, topic, job};
    size_t i = 0;
    for (auto domains : responses) {
        ++i;
        s.responses.push_back(make_response(platform, topic, job, "q" + std::to_string(i),
                                            "r" + std::to_string(i), domains));
    }
    return s;
}

} // namespace test
