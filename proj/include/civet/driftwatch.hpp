#pragma once

#include "civet/metrics.hpp"
#include "civet/records.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace civet {

inline constexpr double kDefaultDriftAlpha = 0.05;
inline constexpr double kDefaultPracticalDelta = 0.02;

struct DriftFlag {
    std::string domain;
    std::string baseline_job;
    std::string current_job;
    double p_value = 1;
    double share_delta = 0;
    bool flagged = false;   // p < alpha AND delta > practical threshold
    bool low_count = false; // some expected cell < 5; p reported anyway
};

/// Per-domain 2x2 chi-squared test (domain vs rest, baseline vs current),
/// 1 degree of freedom, no continuity correction. Flags require both the
/// statistical and the practical threshold.
std::vector<DriftFlag> drift_test(const SampleMetrics& baseline, const SampleMetrics& current,
                                  double alpha = kDefaultDriftAlpha,
                                  double practical_threshold = kDefaultPracticalDelta);

/// Upper tail of the chi-squared distribution with one degree of freedom.
double chi_squared_p_1dof(double statistic);

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// CRLF and lone CR become LF; applied to text before hashing.
std::string normalize_newlines(std::string_view text);

enum class ContentState { unknown, unchanged, changed };

const char* content_state_name(ContentState s);

struct ContentStatus {
    std::string domain;
    std::string job_id;
    ContentState status = ContentState::unknown;
};

/// Checksums keyed by (url, job_id). Ingestion is idempotent; a duplicate
/// key with a different hash is a ConflictingHash error.
class ChecksumLedger {
public:
    void add_hash(const std::string& url, const std::string& job_id, const std::string& sha256);
    void add_text(const std::string& url, const std::string& job_id, std::string_view text);

    std::optional<std::string_view> lookup(const std::string& url,
                                           const std::string& job_id) const;
    size_t size() const { return entries_.size(); }

    /// JSONL stream of {"url","job_id","sha256"} or {"url","job_id","text"}.
    static ChecksumLedger ingest(std::istream& input);
    static ChecksumLedger ingest_file(const std::string& path);

    void write(std::ostream& out) const;

private:
    std::map<std::pair<std::string, std::string>, std::string> entries_;
};

/// Per-job content status of one domain across samples in job order. The
/// first job is always unknown; later jobs compare hashes of the URLs the
/// domain was cited under in either side of the transition.
std::vector<ContentStatus> content_status(const ChecksumLedger& ledger,
                                          const std::vector<const Sample*>& ordered_samples,
                                          const std::string& domain);

} // namespace civet
