#include "civet/synth.hpp"

#include "civet/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

namespace civet {

namespace {

// independent stream families hanging off the config seed
constexpr uint64_t kTagCanonical = 1;
constexpr uint64_t kTagDetFlag = 2;
constexpr uint64_t kTagSample = 3;

uint64_t stream_id(uint64_t tag, uint64_t index) { return (tag << 40) | index; }

std::string format_label(const char* prefix, size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, value);
    return buf;
}

// days since 1970-01-01 -> y/m/d (civil calendar)
void civil_from_days(long days, int& y, unsigned& m, unsigned& d) {
    days += 719468;
    long era = (days >= 0 ? days : days - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(days - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    long year = static_cast<long>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = static_cast<int>(year + (m <= 2));
}

std::string rfc3339(long epoch_seconds) {
    long days = epoch_seconds / 86400;
    long rem = epoch_seconds % 86400;
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", y, m, d, rem / 3600,
                  (rem / 60) % 60, rem % 60);
    return buf;
}

constexpr long kBaseEpoch = 1770076800; // 2026-02-03T00:00:00Z

struct RegimeTable {
    std::vector<size_t> job_bounds;   // ascending, starts at 0
    std::vector<size_t> query_bounds; // ascending, starts at 0
    // cdf[jb][qb] for job in [job_bounds[jb], next), query likewise
    std::vector<std::vector<std::vector<double>>> cdf;
    std::vector<std::vector<std::vector<double>>> shares;

    size_t bucket(const std::vector<size_t>& bounds, size_t v) const {
        size_t b = 0;
        while (b + 1 < bounds.size() && v >= bounds[b + 1]) ++b;
        return b;
    }
};

std::vector<double> base_shares(const SynthConfig& cfg) {
    std::vector<double> v(cfg.n_domains);
    double h = 0;
    for (size_t r = 0; r < cfg.n_domains; ++r) {
        v[r] = std::pow(static_cast<double>(r + 1), -cfg.zipf_s);
        h += v[r];
    }
    for (double& x : v) x /= h;
    return v;
}

void apply_action(std::vector<double>& v, const DriftAction& a) {
    switch (a.kind) {
        case DriftAction::Kind::swap_ranks:
            std::swap(v[a.rank_a - 1], v[a.rank_b - 1]);
            break;
        case DriftAction::Kind::rotate_ranks: {
            double first = v[a.lo - 1];
            for (size_t i = a.lo - 1; i + 1 <= a.hi - 1; ++i) v[i] = v[i + 1];
            v[a.hi - 1] = first;
            break;
        }
        case DriftAction::Kind::scale_share: {
            v[a.rank - 1] *= a.factor;
            double sum = std::accumulate(v.begin(), v.end(), 0.0);
            for (double& x : v) x /= sum;
            break;
        }
    }
}

std::vector<double> shares_with_events(const SynthConfig& cfg, size_t job, size_t query) {
    std::vector<double> v = base_shares(cfg);
    for (const DriftEvent& e : cfg.drift) {
        bool active = (!e.at_job || job >= *e.at_job) && (!e.at_query || query >= *e.at_query);
        if (active) apply_action(v, e.action);
    }
    return v;
}

RegimeTable build_regimes(const SynthConfig& cfg) {
    RegimeTable t;
    std::set<size_t> jb{0}, qb{0};
    for (const DriftEvent& e : cfg.drift) {
        if (e.at_job && *e.at_job > 0) jb.insert(*e.at_job);
        if (e.at_query && *e.at_query > 0) qb.insert(*e.at_query);
    }
    t.job_bounds.assign(jb.begin(), jb.end());
    t.query_bounds.assign(qb.begin(), qb.end());
    t.cdf.resize(t.job_bounds.size());
    t.shares.resize(t.job_bounds.size());
    for (size_t j = 0; j < t.job_bounds.size(); ++j) {
        t.cdf[j].resize(t.query_bounds.size());
        t.shares[j].resize(t.query_bounds.size());
        for (size_t q = 0; q < t.query_bounds.size(); ++q) {
            std::vector<double> v = shares_with_events(cfg, t.job_bounds[j], t.query_bounds[q]);
            std::vector<double> cdf(v.size());
            double acc = 0;
            for (size_t i = 0; i < v.size(); ++i) {
                acc += v[i];
                cdf[i] = acc;
            }
            cdf.back() = 1.0;
            t.shares[j][q] = std::move(v);
            t.cdf[j][q] = std::move(cdf);
        }
    }
    return t;
}

size_t draw_domain(const std::vector<double>& cdf, SplitMix64& rng) {
    double u = rng.next_double();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<size_t>(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
}

struct CanonicalQuery {
    std::vector<size_t> domains; // citation slots of the first run, in order
    std::vector<size_t> pool;    // distinct domains, sorted
    bool frozen = false;
};

// Citation list with one URL per (domain, page); the page index advances per
// repeat of the domain within the response, so a domain cited more often than
// it has pages loses the surplus to URL-level deduplication.
std::vector<CitationRef> to_citations(const std::vector<size_t>& slots, size_t pages) {
    std::vector<CitationRef> cits;
    std::map<size_t, size_t> seen;
    for (size_t domain : slots) {
        size_t repeat = seen[domain]++;
        if (repeat >= pages) continue;
        CitationRef ref;
        ref.domain = synth_domain_name(domain + 1);
        ref.url = "https://" + ref.domain + "/page" + std::to_string(repeat + 1);
        cits.push_back(std::move(ref));
    }
    return cits;
}

} // namespace

CountDistribution CountDistribution::fixed(size_t k) {
    CountDistribution d;
    d.kind = Kind::fixed;
    d.fixed_count = k;
    return d;
}

CountDistribution CountDistribution::uniform(size_t lo, size_t hi) {
    CountDistribution d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

CountDistribution CountDistribution::histogram(std::vector<std::pair<size_t, double>> bins) {
    CountDistribution d;
    d.kind = Kind::histogram;
    d.bins = std::move(bins);
    return d;
}

void CountDistribution::validate() const {
    switch (kind) {
        case Kind::fixed:
            break;
        case Kind::uniform:
            if (lo > hi) throw Error(errc::config_error, "uniform count range has lo > hi");
            break;
        case Kind::histogram: {
            if (bins.empty()) throw Error(errc::config_error, "empty count histogram");
            for (const auto& [count, weight] : bins) {
                if (!(weight > 0)) throw Error(errc::config_error, "histogram weight must be > 0");
            }
            break;
        }
    }
}

size_t CountDistribution::sample(SplitMix64& rng) const {
    switch (kind) {
        case Kind::fixed:
            return fixed_count;
        case Kind::uniform:
            return lo + static_cast<size_t>(rng.next_below(hi - lo + 1));
        case Kind::histogram: {
            double total = 0;
            for (const auto& [count, weight] : bins) total += weight;
            double u = rng.next_double() * total;
            double acc = 0;
            for (const auto& [count, weight] : bins) {
                acc += weight;
                if (u < acc) return count;
            }
            return bins.back().first;
        }
    }
    return fixed_count;
}

DriftAction DriftAction::swap_ranks(size_t a, size_t b) {
    DriftAction act;
    act.kind = Kind::swap_ranks;
    act.rank_a = a;
    act.rank_b = b;
    return act;
}

DriftAction DriftAction::rotate_ranks(size_t lo, size_t hi) {
    DriftAction act;
    act.kind = Kind::rotate_ranks;
    act.lo = lo;
    act.hi = hi;
    return act;
}

DriftAction DriftAction::scale_share(size_t rank, double factor) {
    DriftAction act;
    act.kind = Kind::scale_share;
    act.rank = rank;
    act.factor = factor;
    return act;
}

void SynthConfig::validate() const {
    if (n_domains < 1 || n_domains > 9999) {
        throw Error(errc::config_error, "n_domains must be in [1, 9999]");
    }
    if (!(zipf_s > 0)) throw Error(errc::config_error, "zipf_s must be > 0");
    if (consistency < 0 || consistency > 1) {
        throw Error(errc::config_error, "consistency must be in [0, 1]");
    }
    if (deterministic_fraction < 0 || deterministic_fraction > 1) {
        throw Error(errc::config_error, "deterministic_fraction must be in [0, 1]");
    }
    if (n_queries < 1) throw Error(errc::config_error, "n_queries must be >= 1");
    if (n_samples < 1 || n_samples > 99) {
        throw Error(errc::config_error, "n_samples must be in [1, 99]");
    }
    if (pages_per_domain < 1) throw Error(errc::config_error, "pages_per_domain must be >= 1");
    if (platform.empty() || topic.empty()) {
        throw Error(errc::config_error, "platform and topic labels must be non-empty");
    }
    citations_per_response.validate();
    for (const DriftEvent& e : drift) {
        if (!e.at_job && !e.at_query) {
            throw Error(errc::config_error, "drift event needs a job or query boundary");
        }
        if (e.at_job && *e.at_job >= n_samples) {
            throw Error(errc::config_error, "drift event job index out of range");
        }
        if (e.at_query && *e.at_query >= n_queries) {
            throw Error(errc::config_error, "drift event query index out of range");
        }
        const DriftAction& a = e.action;
        auto rank_ok = [&](size_t r) { return r >= 1 && r <= n_domains; };
        switch (a.kind) {
            case DriftAction::Kind::swap_ranks:
                if (!rank_ok(a.rank_a) || !rank_ok(a.rank_b)) {
                    throw Error(errc::config_error, "swap rank out of range");
                }
                break;
            case DriftAction::Kind::rotate_ranks:
                if (!rank_ok(a.lo) || !rank_ok(a.hi) || a.lo >= a.hi) {
                    throw Error(errc::config_error, "rotate range invalid");
                }
                break;
            case DriftAction::Kind::scale_share:
                if (!rank_ok(a.rank) || !(a.factor > 0)) {
                    throw Error(errc::config_error, "scale action invalid");
                }
                break;
        }
    }
}

std::string synth_domain_name(size_t rank) { return format_label("d", rank, 4) + ".example"; }

std::vector<double> effective_shares(const SynthConfig& config, size_t job, size_t query) {
    return shares_with_events(config, job, query);
}

std::pair<Dataset, GroundTruth> generate(const SynthConfig& config, Exec exec) {
    config.validate();

    GroundTruth truth;
    truth.config = config;
    {
        std::vector<double> base = base_shares(config);
        for (size_t r = 0; r < config.n_domains; ++r) {
            truth.true_share[synth_domain_name(r + 1)] = base[r];
        }
    }

    RegimeTable regimes = build_regimes(config);
    for (size_t j = 0; j < regimes.job_bounds.size(); ++j) {
        for (size_t q = 0; q < regimes.query_bounds.size(); ++q) {
            GroundTruth::Regime regime;
            regime.label = "job>=" + std::to_string(regimes.job_bounds[j]) +
                           ",query>=" + std::to_string(regimes.query_bounds[q]);
            for (size_t r = 0; r < config.n_domains; ++r) {
                regime.shares[synth_domain_name(r + 1)] = regimes.shares[j][q][r];
            }
            truth.regimes.push_back(std::move(regime));
        }
    }

    // canonical first runs, one stream per query, independent of samples
    std::vector<CanonicalQuery> canon(config.n_queries);
    for (size_t q = 0; q < config.n_queries; ++q) {
        SplitMix64 rng(split_stream(config.seed, stream_id(kTagCanonical, q)));
        size_t k = config.citations_per_response.sample(rng);
        const auto& cdf = regimes.cdf[0][regimes.bucket(regimes.query_bounds, q)];
        for (size_t i = 0; i < k; ++i) canon[q].domains.push_back(draw_domain(cdf, rng));
        std::set<size_t> pool(canon[q].domains.begin(), canon[q].domains.end());
        canon[q].pool.assign(pool.begin(), pool.end());

        SplitMix64 flag_rng(split_stream(config.seed, stream_id(kTagDetFlag, q)));
        canon[q].frozen = flag_rng.next_double() < config.deterministic_fraction;
    }

    std::vector<Sample> samples(config.n_samples);
    const bool par = exec == Exec::parallel;
    const int n_samples = static_cast<int>(config.n_samples);

#pragma omp parallel for schedule(static) if (par)
    for (int s = 0; s < n_samples; ++s) {
        Sample& sample = samples[static_cast<size_t>(s)];
        sample.key = {config.platform, config.topic,
                      format_label("job", static_cast<size_t>(s) + 1, 2)};
        sample.responses.reserve(config.n_queries);

        SplitMix64 rng(split_stream(config.seed, stream_id(kTagSample, static_cast<uint64_t>(s))));
        size_t job_bucket = regimes.bucket(regimes.job_bounds, static_cast<size_t>(s));

        for (size_t q = 0; q < config.n_queries; ++q) {
            std::vector<size_t> slots;
            if (s == 0 || canon[q].frozen) {
                slots = canon[q].domains;
            } else {
                size_t k = config.citations_per_response.sample(rng);
                const auto& cdf = regimes.cdf[job_bucket][regimes.bucket(regimes.query_bounds, q)];
                slots.reserve(k);
                for (size_t i = 0; i < k; ++i) {
                    bool pinned = rng.next_double() < config.consistency;
                    if (pinned && !canon[q].pool.empty()) {
                        slots.push_back(canon[q].pool[rng.next_below(canon[q].pool.size())]);
                    } else {
                        slots.push_back(draw_domain(cdf, rng));
                    }
                }
            }

            ResponseRecord rec;
            rec.platform = config.platform;
            rec.topic = config.topic;
            rec.job_id = sample.key.job_id;
            rec.query_id = format_label("q", q + 1, 4);
            rec.query_text = "synthetic query " + format_label("", q + 1, 4);
            rec.response_id = format_label("r", q + 1, 4);
            rec.timestamp = rfc3339(kBaseEpoch + 86400L * s + 60L * static_cast<long>(q));
            rec.citations = to_citations(slots, config.pages_per_domain);
            sample.responses.push_back(std::move(rec));
        }
    }

    Dataset dataset;
    dataset.provenance.push_back("synthetic seed=" + std::to_string(config.seed));
    for (Sample& s : samples) dataset.samples.emplace(s.key, std::move(s));
    return {std::move(dataset), std::move(truth)};
}

SynthConfig preset(const std::string& name) {
    // Calibration table for the three engine profiles. Count distributions
    // pin the citations-per-response medians (36-40 / 5-7 / 19-22) and the
    // consistency knob pins the median pairwise Jaccard (0.30 / 0.37 / 0.50).
    SynthConfig cfg;
    if (name == "gemini-like") {
        cfg.n_domains = 800;
        cfg.zipf_s = 0.85;
        cfg.citations_per_response = CountDistribution::uniform(24, 53);
        cfg.consistency = 0.70;
        cfg.deterministic_fraction = 0.0;
    } else if (name == "searchgpt-like") {
        // the long tail lets frozen queries own a few domains outright,
        // which shows up as zero log-share dispersion across jobs
        cfg.n_domains = 1500;
        cfg.zipf_s = 1.0;
        cfg.citations_per_response = CountDistribution::histogram({
            {1, 2}, {2, 2}, {3, 5}, {4, 10}, {5, 31}, {6, 16}, {7, 12},
            {8, 8}, {9, 5}, {10, 4}, {11, 2}, {12, 1}, {13, 1}, {15, 1},
        });
        cfg.consistency = 0.80;
        cfg.deterministic_fraction = 0.12;
        // the mid-sequence reshuffle that makes convergence non-monotone and
        // keeps a deterministic layer of identically repeating answers
        DriftEvent shift;
        shift.at_query = 120;
        shift.action = DriftAction::rotate_ranks(2, 6);
        cfg.drift.push_back(shift);
    } else if (name == "perplexity-like") {
        cfg.n_domains = 400;
        cfg.zipf_s = 0.95;
        cfg.citations_per_response = CountDistribution::uniform(12, 30);
        cfg.consistency = 0.93;
        cfg.deterministic_fraction = 0.0;
    } else {
        throw Error(errc::unknown_preset, "unknown preset '" + name + "'");
    }
    cfg.platform = name;
    cfg.topic = "synthetic";
    return cfg;
}

SynthConfig inject_drift(SynthConfig config, const std::vector<DriftEvent>& schedule) {
    SynthConfig updated = std::move(config);
    for (const DriftEvent& e : schedule) updated.drift.push_back(e);
    try {
        updated.validate();
    } catch (const Error& e) {
        throw Error(errc::schedule_out_of_bounds, e.what());
    }
    return updated;
}

ChecksumLedger synth_checksums(const Dataset& dataset, const SynthConfig& config,
                               std::optional<size_t> churn_rank) {
    // Pages change hash exactly where a job-boundary drift event moves the
    // domain's share; churn_rank simulates a page that re-renders every job.
    std::vector<std::set<std::string>> changed_at(config.n_samples);
    for (size_t j = 1; j < config.n_samples; ++j) {
        std::vector<double> prev = effective_shares(config, j - 1, 0);
        std::vector<double> now = effective_shares(config, j, 0);
        for (size_t r = 0; r < config.n_domains; ++r) {
            if (prev[r] != now[r]) changed_at[j].insert(synth_domain_name(r + 1));
        }
    }
    std::optional<std::string> churn_domain;
    if (churn_rank) churn_domain = synth_domain_name(*churn_rank);

    ChecksumLedger ledger;
    size_t job_index = 0;
    for (const auto& [key, sample] : dataset.samples) {
        std::map<std::string, std::string> url_domain;
        for (const ResponseRecord& r : sample.responses) {
            for (const CitationRef& c : r.citations) url_domain.emplace(c.url, c.domain);
        }
        for (const auto& [url, domain] : url_domain) {
            size_t rev = 0;
            for (size_t j = 1; j <= job_index && j < config.n_samples; ++j) {
                if (changed_at[j].contains(domain)) ++rev;
            }
            if (churn_domain && domain == *churn_domain) rev += job_index;
            ledger.add_text(url, key.job_id, url + "\nrevision " + std::to_string(rev) + "\n");
        }
        ++job_index;
    }
    return ledger;
}

} // namespace civet
