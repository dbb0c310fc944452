#include "civet/driftwatch.hpp"

#include "civet/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace civet {

double chi_squared_p_1dof(double statistic) {
    if (statistic <= 0) return 1.0;
    return std::erfc(std::sqrt(statistic / 2.0));
}

std::vector<DriftFlag> drift_test(const SampleMetrics& baseline, const SampleMetrics& current,
                                  double alpha, double practical_threshold) {
    if (baseline.total_citations == 0 || current.total_citations == 0) {
        throw Error(errc::empty_sample_citations, "both samples need citations for a drift test");
    }
    if (!(alpha > 0 && alpha < 1)) throw Error(errc::invalid_argument, "alpha must be in (0, 1)");

    std::set<std::string> domains;
    for (const auto& [d, m] : baseline.per_domain) domains.insert(d);
    for (const auto& [d, m] : current.per_domain) domains.insert(d);

    const double total_b = static_cast<double>(baseline.total_citations);
    const double total_c = static_cast<double>(current.total_citations);
    const double grand = total_b + total_c;

    std::vector<DriftFlag> flags;
    flags.reserve(domains.size());
    for (const std::string& domain : domains) {
        auto count_of = [&](const SampleMetrics& m) {
            auto it = m.per_domain.find(domain);
            return it == m.per_domain.end() ? 0.0 : static_cast<double>(it->second.count);
        };
        const double a = count_of(baseline);
        const double b = total_b - a;
        const double c = count_of(current);
        const double d = total_c - c;

        DriftFlag flag;
        flag.domain = domain;
        flag.baseline_job = baseline.key.job_id;
        flag.current_job = current.key.job_id;
        flag.share_delta = std::fabs(c / total_c - a / total_b);

        const double col1 = a + c, col2 = b + d;
        if (col1 == 0 || col2 == 0) {
            flag.p_value = 1.0;
        } else {
            double det = a * d - b * c;
            double chi2 = grand * det * det / (total_b * total_c * col1 * col2);
            flag.p_value = chi_squared_p_1dof(chi2);
        }
        flag.low_count = total_b * col1 / grand < 5 || total_c * col1 / grand < 5 ||
                         total_b * col2 / grand < 5 || total_c * col2 / grand < 5;
        flag.flagged = flag.p_value < alpha && flag.share_delta > practical_threshold;
        flags.push_back(std::move(flag));
    }
    return flags;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(errc::io_error, "SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

const char* content_state_name(ContentState s) {
    switch (s) {
        case ContentState::unknown: return "unknown";
        case ContentState::unchanged: return "unchanged";
        case ContentState::changed: return "changed";
    }
    return "unknown";
}

void ChecksumLedger::add_hash(const std::string& url, const std::string& job_id,
                              const std::string& sha256) {
    if (sha256.size() != 64 ||
        sha256.find_first_not_of("0123456789abcdef") != std::string::npos) {
        throw Error(errc::schema_error, "not a lowercase hex SHA-256: " + sha256);
    }
    auto [it, inserted] = entries_.try_emplace({url, job_id}, sha256);
    if (!inserted && it->second != sha256) {
        throw Error(errc::conflicting_hash,
                    "conflicting hashes for (" + url + ", " + job_id + ")");
    }
}

void ChecksumLedger::add_text(const std::string& url, const std::string& job_id,
                              std::string_view text) {
    add_hash(url, job_id, sha256_hex(normalize_newlines(text)));
}

std::optional<std::string_view> ChecksumLedger::lookup(const std::string& url,
                                                       const std::string& job_id) const {
    auto it = entries_.find({url, job_id});
    if (it == entries_.end()) return std::nullopt;
    return std::string_view(it->second);
}

ChecksumLedger ChecksumLedger::ingest(std::istream& input) {
    using nlohmann::json;
    ChecksumLedger ledger;
    std::string line;
    size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(errc::schema_error,
                        "checksum line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("url") || !j.contains("job_id")) {
            throw Error(errc::schema_error,
                        "checksum line " + std::to_string(line_no) + ": need url and job_id");
        }
        std::string url = j.at("url").get<std::string>();
        std::string job = j.at("job_id").get<std::string>();
        if (j.contains("sha256")) {
            ledger.add_hash(url, job, j.at("sha256").get<std::string>());
        } else if (j.contains("text")) {
            ledger.add_text(url, job, j.at("text").get<std::string>());
        } else {
            throw Error(errc::schema_error,
                        "checksum line " + std::to_string(line_no) + ": need sha256 or text");
        }
    }
    return ledger;
}

ChecksumLedger ChecksumLedger::ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    return ingest(in);
}

void ChecksumLedger::write(std::ostream& out) const {
    for (const auto& [key, sha] : entries_) {
        nlohmann::json j = {{"url", key.first}, {"job_id", key.second}, {"sha256", sha}};
        out << j.dump() << '\n';
    }
}

std::vector<ContentStatus> content_status(const ChecksumLedger& ledger,
                                          const std::vector<const Sample*>& ordered_samples,
                                          const std::string& domain) {
    if (ordered_samples.empty()) throw Error(errc::invalid_argument, "no samples");

    std::vector<std::set<std::string>> urls_by_job(ordered_samples.size());
    for (size_t j = 0; j < ordered_samples.size(); ++j) {
        for (const ResponseRecord& r : ordered_samples[j]->responses) {
            for (const CitationRef& c : r.citations) {
                if (c.domain == domain) urls_by_job[j].insert(c.url);
            }
        }
    }

    std::vector<ContentStatus> statuses;
    statuses.reserve(ordered_samples.size());
    for (size_t j = 0; j < ordered_samples.size(); ++j) {
        ContentStatus st;
        st.domain = domain;
        st.job_id = ordered_samples[j]->key.job_id;
        if (j == 0) {
            st.status = ContentState::unknown;
        } else {
            const std::string& prev_job = ordered_samples[j - 1]->key.job_id;
            std::set<std::string> candidates = urls_by_job[j - 1];
            candidates.insert(urls_by_job[j].begin(), urls_by_job[j].end());

            size_t compared = 0;
            bool differs = false;
            for (const std::string& url : candidates) {
                auto before = ledger.lookup(url, prev_job);
                auto now = ledger.lookup(url, st.job_id);
                if (!before || !now) continue;
                ++compared;
                if (*before != *now) differs = true;
            }
            if (compared == 0) {
                st.status = ContentState::unknown;
            } else {
                st.status = differs ? ContentState::changed : ContentState::unchanged;
            }
        }
        statuses.push_back(std::move(st));
    }
    return statuses;
}

} // namespace civet
