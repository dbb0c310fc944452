#include "civet/dataset.hpp"

#include "civet/domain.hpp"
#include "civet/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace civet {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string require_string(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
        throw Error(errc::schema_error, std::string("missing or non-string field '") + field + "'");
    }
    return it->get<std::string>();
}

std::string require_nonempty(const json& j, const char* field) {
    std::string v = require_string(j, field);
    if (v.empty()) {
        throw Error(errc::schema_error, std::string("empty field '") + field + "'");
    }
    return v;
}

} // namespace

ParseReport parse_dataset(std::istream& input, const std::string& source_name) {
    ParseReport report;
    report.dataset.provenance.push_back(source_name);
    std::set<std::pair<SampleKey, std::string>> seen;

    std::string line;
    size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            if (!j.is_object()) throw Error(errc::schema_error, "record is not an object");

            ResponseRecord rec;
            rec.platform = lower(require_nonempty(j, "platform"));
            rec.topic = lower(require_nonempty(j, "topic"));
            rec.job_id = require_nonempty(j, "job_id");
            rec.timestamp = require_nonempty(j, "timestamp");
            rec.query_id = require_nonempty(j, "query_id");
            rec.query_text = require_string(j, "query_text");
            rec.response_id = require_nonempty(j, "response_id");

            bool repaired = false;
            auto cit = j.find("citations");
            if (cit == j.end() || !cit->is_array()) {
                throw Error(errc::schema_error, "missing or non-array field 'citations'");
            }
            for (const auto& c : *cit) {
                if (!c.is_object()) throw Error(errc::schema_error, "citation is not an object");
                CitationRef ref;
                ref.url = require_nonempty(c, "url");
                std::string resolved = extract_domain(ref.url);
                if (auto d = c.find("domain"); d != c.end() && d->is_string()) {
                    ref.domain = lower(d->get<std::string>());
                    if (ref.domain != resolved) {
                        ref.domain = resolved;
                        repaired = true;
                    }
                } else {
                    ref.domain = resolved;
                    repaired = true;
                }
                rec.citations.push_back(std::move(ref));
            }

            SampleKey key{rec.platform, rec.topic, rec.job_id};
            if (!seen.insert({key, rec.response_id}).second) {
                throw Error(errc::duplicate_response,
                            "duplicate response_id '" + rec.response_id + "' in job '" +
                                rec.job_id + "'");
            }

            Sample& sample = report.dataset.samples[key];
            sample.key = key;
            sample.responses.push_back(std::move(rec));
            ++report.accepted;
            if (repaired) ++report.repaired;
        } catch (const Error& e) {
            ++report.rejected;
            report.errors.push_back({line_no, e.what()});
        } catch (const json::exception& e) {
            ++report.rejected;
            report.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
        }
    }

    if (report.accepted == 0) {
        throw Error(errc::no_valid_records,
                    "no line of '" + source_name + "' parsed as a response record");
    }
    return report;
}

ParseReport parse_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    return parse_dataset(in, path);
}

void serialize_dataset(const Dataset& dataset, std::ostream& out) {
    for (const auto& [key, sample] : dataset.samples) {
        for (const ResponseRecord& rec : sample.responses) {
            json cits = json::array();
            for (const CitationRef& c : rec.citations) {
                cits.push_back({{"url", c.url}, {"domain", c.domain}});
            }
            json j = {
                {"platform", rec.platform},   {"topic", rec.topic},
                {"job_id", rec.job_id},       {"timestamp", rec.timestamp},
                {"query_id", rec.query_id},   {"query_text", rec.query_text},
                {"response_id", rec.response_id}, {"citations", std::move(cits)},
            };
            out << j.dump() << '\n';
        }
    }
}

std::vector<SampleKey> order_jobs(const std::vector<SampleKey>& keys,
                                  const std::vector<std::string>& job_order) {
    std::vector<SampleKey> ordered;
    if (!job_order.empty()) {
        std::unordered_map<std::string, size_t> rank;
        for (size_t i = 0; i < job_order.size(); ++i) rank.emplace(job_order[i], i);
        std::vector<SampleKey> listed, unlisted;
        for (const auto& k : keys) {
            (rank.contains(k.job_id) ? listed : unlisted).push_back(k);
        }
        std::sort(listed.begin(), listed.end(), [&](const SampleKey& a, const SampleKey& b) {
            return rank.at(a.job_id) < rank.at(b.job_id);
        });
        std::sort(unlisted.begin(), unlisted.end());
        ordered = std::move(listed);
        ordered.insert(ordered.end(), unlisted.begin(), unlisted.end());
    } else {
        ordered = keys;
        std::sort(ordered.begin(), ordered.end());
    }
    return ordered;
}

std::vector<std::string> read_job_order_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::vector<std::string> jobs;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) jobs.push_back(line);
    }
    return jobs;
}

std::vector<SampleGroup> group_by_platform_topic(const Dataset& dataset,
                                                 const std::vector<std::string>& job_order) {
    std::map<std::pair<std::string, std::string>, std::vector<SampleKey>> keys;
    for (const auto& [key, sample] : dataset.samples) {
        keys[{key.platform, key.topic}].push_back(key);
    }
    std::vector<SampleGroup> groups;
    for (const auto& [pt, group_keys] : keys) {
        SampleGroup g;
        g.platform = pt.first;
        g.topic = pt.second;
        for (const SampleKey& key : order_jobs(group_keys, job_order)) {
            g.samples.push_back(&dataset.samples.at(key));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<QueryRuns> group_repeated_queries(const std::vector<const Sample*>& samples,
                                              DuplicateQueryPolicy policy) {
    if (samples.size() < 2) {
        throw Error(errc::no_repeated_queries, "need at least two samples");
    }
    for (const Sample* s : samples) {
        if (s->key.platform != samples.front()->key.platform ||
            s->key.topic != samples.front()->key.topic) {
            throw Error(errc::mixed_keys, "samples span multiple (platform, topic) pairs");
        }
    }

    std::map<std::string, QueryRuns> by_query;
    for (const Sample* s : samples) {
        std::set<std::string> seen_in_sample;
        for (const ResponseRecord& r : s->responses) {
            if (policy == DuplicateQueryPolicy::first_occurrence &&
                !seen_in_sample.insert(r.query_id).second) {
                continue;
            }
            QueryRuns& q = by_query[r.query_id];
            q.query_id = r.query_id;
            q.runs.emplace_back(s, &r);
        }
    }

    std::vector<QueryRuns> grouped;
    for (auto& [id, q] : by_query) {
        bool multi_sample = false;
        for (size_t i = 1; i < q.runs.size(); ++i) {
            if (q.runs[i].first != q.runs[0].first) multi_sample = true;
        }
        bool keep = policy == DuplicateQueryPolicy::keep_all ? q.runs.size() >= 2 : multi_sample;
        if (keep) grouped.push_back(std::move(q));
    }
    if (grouped.empty()) {
        throw Error(errc::no_repeated_queries, "no query_id appears in two or more samples");
    }
    return grouped;
}

} // namespace civet
