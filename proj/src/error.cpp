#include "civet/error.hpp"

namespace civet {

const char* errc_name(errc code) {
    switch (code) {
        case errc::malformed_url: return "MalformedUrl";
        case errc::ip_host: return "IpHost";
        case errc::no_registered_domain: return "NoRegisteredDomain";
        case errc::schema_error: return "SchemaError";
        case errc::no_valid_records: return "NoValidRecords";
        case errc::duplicate_response: return "DuplicateResponse";
        case errc::empty_sample: return "EmptySample";
        case errc::empty_sample_citations: return "EmptySampleCitations";
        case errc::mixed_keys: return "MixedKeys";
        case errc::no_repeated_queries: return "NoRepeatedQueries";
        case errc::single_run: return "SingleRun";
        case errc::zero_share: return "ZeroShare";
        case errc::single_sample: return "SingleSample";
        case errc::insufficient_rows: return "InsufficientRows";
        case errc::degenerate_ranks: return "DegenerateRanks";
        case errc::too_few_domains: return "TooFewDomains";
        case errc::degenerate_resample: return "DegenerateResample";
        case errc::grid_exceeds_sample: return "GridExceedsSample";
        case errc::statistic_undefined: return "StatisticUndefined";
        case errc::conflicting_hash: return "ConflictingHash";
        case errc::unknown_preset: return "UnknownPreset";
        case errc::config_error: return "ConfigError";
        case errc::schedule_out_of_bounds: return "ScheduleOutOfBounds";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

} // namespace civet
