#pragma once

#include "civet/driftwatch.hpp"
#include "civet/records.hpp"
#include "civet/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace civet {

struct CountDistribution {
    enum class Kind { fixed, uniform, histogram };
    Kind kind = Kind::fixed;
    size_t fixed_count = 5;
    size_t lo = 0, hi = 0;                         // uniform, inclusive bounds
    std::vector<std::pair<size_t, double>> bins;   // histogram: (count, weight)

    static CountDistribution fixed(size_t k);
    static CountDistribution uniform(size_t lo, size_t hi);
    static CountDistribution histogram(std::vector<std::pair<size_t, double>> bins);

    size_t sample(SplitMix64& rng) const;
    void validate() const;
};

struct DriftAction {
    enum class Kind {
        swap_ranks,   // exchange the shares held by two ranks of the base order
        rotate_ranks, // cyclic left shift of the shares at ranks [lo, hi]
        scale_share,  // multiply one rank's share by factor, renormalize
    };
    Kind kind = Kind::swap_ranks;
    size_t rank_a = 0, rank_b = 0; // swap (1-based)
    size_t lo = 0, hi = 0;         // rotate (1-based, inclusive)
    size_t rank = 0;               // scale
    double factor = 1.0;

    static DriftAction swap_ranks(size_t a, size_t b);
    static DriftAction rotate_ranks(size_t lo, size_t hi);
    static DriftAction scale_share(size_t rank, double factor);
};

/// A drift event applies its action to the ground-truth vector from a job
/// boundary, a within-sample query boundary, or both.
struct DriftEvent {
    std::optional<size_t> at_job;   // active for jobs >= at_job (0-based)
    std::optional<size_t> at_query; // active for query index >= at_query
    DriftAction action;
};

/// Full parameterization of a synthetic stochastic answer engine with known
/// ground-truth shares (normalized Zipf weights over n_domains).
struct SynthConfig {
    size_t n_domains = 300;
    double zipf_s = 1.0;
    CountDistribution citations_per_response = CountDistribution::fixed(5);
    // probability that a citation slot of a repeated query re-draws from the
    // query's first-run domain set instead of the global pool
    double consistency = 0.0;
    // fraction of queries whose citation list is frozen after first generation
    double deterministic_fraction = 0.0;
    std::vector<DriftEvent> drift;
    size_t n_queries = 200;
    size_t n_samples = 9;
    uint64_t seed = 1;
    std::string platform = "synthetic";
    std::string topic = "synthetic";
    size_t pages_per_domain = 5; // distinct URLs per domain

    void validate() const;
};

struct GroundTruth {
    std::map<std::string, double> true_share; // base (no-drift) vector
    SynthConfig config;

    struct Regime {
        std::string label;
        std::map<std::string, double> shares;
    };
    std::vector<Regime> regimes; // realized vectors when drift is scheduled
};

std::string synth_domain_name(size_t rank); // 1-based: "d0001.example"

/// Ground-truth share vector in effect at (job, query index).
std::vector<double> effective_shares(const SynthConfig& config, size_t job, size_t query);

/// Deterministic in (config, seed); parallel generation across samples uses
/// per-sample derived streams and matches serial generation byte for byte.
std::pair<Dataset, GroundTruth> generate(const SynthConfig& config, Exec exec = Exec::parallel);

/// Calibrated profiles: "gemini-like", "searchgpt-like", "perplexity-like".
SynthConfig preset(const std::string& name);

/// Returns a copy of the config with the events appended. Throws
/// ScheduleOutOfBounds on indices or ranks outside the config's bounds.
SynthConfig inject_drift(SynthConfig config, const std::vector<DriftEvent>& schedule);

/// Synthetic checksum ledger for the dataset: page hashes are stable across
/// jobs except where a job-boundary drift event touches the domain (and, when
/// churn_rank is set, that domain's pages change on every job).
ChecksumLedger synth_checksums(const Dataset& dataset, const SynthConfig& config,
                               std::optional<size_t> churn_rank = std::nullopt);

} // namespace civet
