#pragma once

#include "civet/records.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace civet {

struct LineError {
    size_t line_no = 0; // 1-based
    std::string reason;
};

struct ParseReport {
    Dataset dataset;
    size_t accepted = 0;
    size_t repaired = 0; // lines whose citations needed a domain fill/fix
    size_t rejected = 0;
    std::vector<LineError> errors;
};

/// Parses line-delimited JSON records into a Dataset. Missing citation
/// domains are filled via extract_domain; mismatched ones are corrected and
/// counted as repaired. Bad lines are collected per line; the call fails
/// (NoValidRecords) only when nothing parses.
ParseReport parse_dataset(std::istream& input, const std::string& source_name = "<stream>");
ParseReport parse_dataset_file(const std::string& path);

/// Canonical JSONL form: one record per line, domains filled, samples in key
/// order. parse(serialize(parse(x))) == parse(x).
void serialize_dataset(const Dataset& dataset, std::ostream& out);

/// Job order for a (platform, topic) group: the sidecar list when given
/// (unknown job_ids in the list are ignored), lexicographic job_id otherwise.
std::vector<SampleKey> order_jobs(const std::vector<SampleKey>& keys,
                                  const std::vector<std::string>& job_order);

/// Reads a job-order sidecar: one job_id per line, top = earliest.
std::vector<std::string> read_job_order_file(const std::string& path);

struct SampleGroup {
    std::string platform;
    std::string topic;
    std::vector<const Sample*> samples; // in job order
};

/// Samples grouped by (platform, topic), each group in job order.
std::vector<SampleGroup> group_by_platform_topic(const Dataset& dataset,
                                                 const std::vector<std::string>& job_order = {});

enum class DuplicateQueryPolicy {
    first_occurrence, // one run per sample per query (default)
    keep_all,         // within-sample repeats become additional runs
};

struct QueryRuns {
    std::string query_id;
    // (sample, response) in sample order; one response per entry.
    std::vector<std::pair<const Sample*, const ResponseRecord*>> runs;
};

/// Runs of each query repeated across samples, sorted by query_id. Queries
/// with fewer than two runs are dropped. Throws NoRepeatedQueries when the
/// result would be empty and MixedKeys when samples span several
/// (platform, topic) pairs.
std::vector<QueryRuns> group_repeated_queries(
    const std::vector<const Sample*>& samples,
    DuplicateQueryPolicy policy = DuplicateQueryPolicy::first_occurrence);

} // namespace civet
