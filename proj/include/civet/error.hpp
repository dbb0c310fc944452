#pragma once

#include <stdexcept>
#include <string>

namespace civet {

enum class errc {
    malformed_url,
    ip_host,
    no_registered_domain,
    schema_error,
    no_valid_records,
    duplicate_response,
    empty_sample,
    empty_sample_citations,
    mixed_keys,
    no_repeated_queries,
    single_run,
    zero_share,
    single_sample,
    insufficient_rows,
    degenerate_ranks,
    too_few_domains,
    degenerate_resample,
    grid_exceeds_sample,
    statistic_undefined,
    conflicting_hash,
    unknown_preset,
    config_error,
    schedule_out_of_bounds,
    invalid_argument,
    io_error,
};

const char* errc_name(errc code);

/// Toolkit-wide exception type. `code()` identifies the failure class so
/// callers (and tests) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace civet
