#include "civet/resample.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

namespace civet {

const char* metric_name(Metric m) {
    return m == Metric::share ? "share" : "prevalence";
}

size_t percentile_rank(size_t b, double q) {
    double v = static_cast<double>(b) * q;
    auto r = static_cast<size_t>(std::ceil(v - 1e-9 * (1.0 + std::fabs(v))));
    return std::clamp<size_t>(r, 1, b);
}

double reference_width(double p_anchor, size_t n) {
    return 3.92 * std::sqrt(p_anchor * (1 - p_anchor) / static_cast<double>(n));
}

namespace {

// Per-response citation tallies for the requested domain slots, so a
// replicate costs O(n + touched slots) instead of re-walking citation lists.
struct Prep {
    size_t n_domains = 0;
    std::vector<double> resp_total;                    // citations per response
    std::vector<uint32_t> offsets;                     // CSR into hits
    std::vector<std::pair<uint32_t, uint32_t>> hits;   // (slot, count)
};

Prep prepare(const std::vector<const ResponseRecord*>& responses,
             const std::vector<std::string>& domains) {
    Prep prep;
    prep.n_domains = domains.size();
    std::unordered_map<std::string_view, uint32_t> slot_of;
    for (uint32_t i = 0; i < domains.size(); ++i) slot_of.emplace(domains[i], i);

    prep.resp_total.reserve(responses.size());
    prep.offsets.reserve(responses.size() + 1);
    prep.offsets.push_back(0);
    std::unordered_map<uint32_t, uint32_t> counts;
    for (const ResponseRecord* r : responses) {
        prep.resp_total.push_back(static_cast<double>(r->citations.size()));
        counts.clear();
        for (const CitationRef& c : r->citations) {
            if (auto it = slot_of.find(std::string_view(c.domain)); it != slot_of.end()) {
                ++counts[it->second];
            }
        }
        for (const auto& [slot, count] : counts) prep.hits.emplace_back(slot, count);
        // keep deterministic slot order within a response
        std::sort(prep.hits.begin() + prep.offsets.back(), prep.hits.end());
        prep.offsets.push_back(static_cast<uint32_t>(prep.hits.size()));
    }
    return prep;
}

// One replicate column per domain slot. Values depend only on (seed, k, n),
// never on the slot list, so any domain subset sees the same resamples.
void replicate_kernel(const Prep& prep, Metric metric, int b, uint64_t seed,
                      std::vector<double>& values, Exec exec) {
    const size_t n = prep.resp_total.size();
    const size_t d = prep.n_domains;
    // parallel dispatch costs more than it saves on tiny problems
    const bool par =
        exec == Exec::parallel && static_cast<size_t>(b) * (n + d) >= 1 << 16;

#pragma omp parallel if (par)
    {
        std::vector<double> count(d), citing(d); // per-thread scratch
#pragma omp for schedule(static)
        for (int k = 0; k < b; ++k) {
            SplitMix64 rng(split_stream(seed, static_cast<uint64_t>(k)));
            std::fill(count.begin(), count.end(), 0.0);
            std::fill(citing.begin(), citing.end(), 0.0);
            double total = 0;
            for (size_t i = 0; i < n; ++i) {
                auto r = static_cast<size_t>(rng.next_below(n));
                total += prep.resp_total[r];
                for (uint32_t h = prep.offsets[r]; h < prep.offsets[r + 1]; ++h) {
                    const auto& [slot, c] = prep.hits[h];
                    count[slot] += c;
                    citing[slot] += 1;
                }
            }
            double* out = values.data() + static_cast<size_t>(k) * d;
            if (metric == Metric::share) {
                // a resample with zero citations contributes share 0 everywhere
                for (size_t s = 0; s < d; ++s) out[s] = total > 0 ? count[s] / total : 0.0;
            } else {
                for (size_t s = 0; s < d; ++s) out[s] = citing[s] / static_cast<double>(n);
            }
        }
    }
}

double point_estimate(const Prep& prep, Metric metric, size_t slot) {
    const size_t n = prep.resp_total.size();
    double total = std::accumulate(prep.resp_total.begin(), prep.resp_total.end(), 0.0);
    double count = 0, citing = 0;
    for (size_t i = 0; i < n; ++i) {
        for (uint32_t h = prep.offsets[i]; h < prep.offsets[i + 1]; ++h) {
            if (prep.hits[h].first == slot) {
                count += prep.hits[h].second;
                citing += 1;
            }
        }
    }
    if (metric == Metric::share) return total > 0 ? count / total : 0.0;
    return citing / static_cast<double>(n);
}

std::map<std::string, BootstrapCI> bootstrap_selection(
    const std::vector<const ResponseRecord*>& responses, Metric metric,
    const std::vector<std::string>& domains, int b, double alpha, uint64_t seed, Exec exec) {
    Prep prep = prepare(responses, domains);
    const size_t d = domains.size();
    std::vector<double> values(static_cast<size_t>(b) * d);
    replicate_kernel(prep, metric, b, seed, values, exec);

    const size_t lower_rank = percentile_rank(static_cast<size_t>(b), alpha / 2);
    const size_t upper_rank = percentile_rank(static_cast<size_t>(b), 1 - alpha / 2);
    std::vector<double> lower(d), upper(d);
    const bool par = exec == Exec::parallel && static_cast<size_t>(b) * d >= 1 << 16;
#pragma omp parallel if (par)
    {
        std::vector<double> column(static_cast<size_t>(b));
#pragma omp for schedule(static)
        for (size_t s = 0; s < d; ++s) {
            for (int k = 0; k < b; ++k) {
                column[static_cast<size_t>(k)] = values[static_cast<size_t>(k) * d + s];
            }
            std::sort(column.begin(), column.end());
            lower[s] = column[lower_rank - 1];
            upper[s] = column[upper_rank - 1];
        }
    }

    std::map<std::string, BootstrapCI> out;
    for (size_t s = 0; s < d; ++s) {
        BootstrapCI ci;
        ci.metric = metric;
        ci.domain = domains[s];
        ci.point = point_estimate(prep, metric, s);
        ci.lower = lower[s];
        ci.upper = upper[s];
        ci.width = ci.upper - ci.lower;
        ci.replicates = b;
        ci.alpha = alpha;
        ci.seed = seed;
        out.emplace(domains[s], std::move(ci));
    }
    return out;
}

void validate_bootstrap_args(const Sample& sample, Metric metric, int b, double alpha) {
    if (sample.responses.empty()) {
        throw Error(errc::empty_sample, "sample " + sample.key.job_id + " has no responses");
    }
    if (sample.responses.size() < 2) {
        throw Error(errc::invalid_argument, "bootstrap needs at least two responses");
    }
    if (b < 100) throw Error(errc::invalid_argument, "replicate count must be at least 100");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(errc::invalid_argument, "alpha must lie in (0, 1)");
    }
    if (metric == Metric::share) {
        size_t total = 0;
        for (const ResponseRecord& r : sample.responses) total += r.citations.size();
        if (total == 0) {
            throw Error(errc::empty_sample_citations,
                        "sample " + sample.key.job_id + " has no citations; share is undefined");
        }
    }
}

std::vector<const ResponseRecord*> all_responses(const Sample& sample) {
    std::vector<const ResponseRecord*> v;
    v.reserve(sample.responses.size());
    for (const ResponseRecord& r : sample.responses) v.push_back(&r);
    return v;
}

} // namespace

BootstrapCI bootstrap_metric_ci(const Sample& sample, Metric metric, const std::string& domain,
                                int b, double alpha, uint64_t seed, Exec exec) {
    validate_bootstrap_args(sample, metric, b, alpha);
    auto out = bootstrap_selection(all_responses(sample), metric, {domain}, b, alpha, seed, exec);
    return out.at(domain);
}

std::map<std::string, BootstrapCI> bootstrap_all_domains(const Sample& sample, Metric metric,
                                                         const std::set<std::string>& domains,
                                                         int b, double alpha, uint64_t seed,
                                                         Exec exec) {
    validate_bootstrap_args(sample, metric, b, alpha);
    if (domains.empty()) throw Error(errc::invalid_argument, "empty domain set");
    std::vector<std::string> ordered(domains.begin(), domains.end());
    return bootstrap_selection(all_responses(sample), metric, ordered, b, alpha, seed, exec);
}

std::vector<size_t> default_grid(size_t n_responses, size_t step) {
    std::vector<size_t> grid;
    for (size_t n = step; n < n_responses; n += step) grid.push_back(n);
    if (grid.empty() || grid.back() != n_responses) grid.push_back(n_responses);
    return grid;
}

ConvergenceCurve convergence_curve(const Sample& sample, Metric metric,
                                   const std::set<std::string>& domains,
                                   const std::vector<size_t>& grid, int b, double alpha,
                                   uint64_t seed, SubsampleOrder order,
                                   std::optional<double> target_width,
                                   std::optional<double> anchor_override, size_t draws,
                                   Exec exec) {
    validate_bootstrap_args(sample, metric, b, alpha);
    if (domains.empty()) throw Error(errc::invalid_argument, "empty domain set");
    if (grid.empty()) throw Error(errc::invalid_argument, "empty grid");
    if (draws == 0) throw Error(errc::invalid_argument, "draw count must be positive");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > sample.n_responses()) {
            throw Error(errc::grid_exceeds_sample,
                        "grid point " + std::to_string(grid[i]) + " exceeds sample size " +
                            std::to_string(sample.n_responses()));
        }
        if (grid[i] < 2 || (i > 0 && grid[i] <= grid[i - 1])) {
            throw Error(errc::invalid_argument, "grid must be strictly increasing, points >= 2");
        }
    }

    ConvergenceCurve curve;
    curve.metric = metric;
    curve.target_width = target_width.value_or(
        metric == Metric::share ? kDefaultTargetWidthShare : kDefaultTargetWidthPrevalence);

    std::vector<std::string> ordered(domains.begin(), domains.end());
    std::vector<const ResponseRecord*> full = all_responses(sample);

    if (anchor_override) {
        curve.p_anchor = *anchor_override;
    } else {
        // Anchor at the domain with the largest full-sample point estimate;
        // that domain typically drives the max width.
        Prep prep = prepare(full, ordered);
        double best = 0;
        for (size_t s = 0; s < ordered.size(); ++s) {
            best = std::max(best, point_estimate(prep, metric, s));
        }
        curve.p_anchor = best;
    }

    for (size_t gi = 0; gi < grid.size(); ++gi) {
        const size_t n = grid[gi];
        double width_sum = 0;
        for (size_t draw = 0; draw < draws; ++draw) {
            std::vector<const ResponseRecord*> selection;
            if (order == SubsampleOrder::prefix) {
                selection.assign(full.begin(), full.begin() + static_cast<ptrdiff_t>(n));
            } else {
                // seeded partial Fisher-Yates, without replacement
                SplitMix64 rng(split_stream(seed, 0x5e1ec700u + gi * 1009 + draw));
                std::vector<size_t> idx(full.size());
                std::iota(idx.begin(), idx.end(), 0);
                for (size_t i = 0; i < n; ++i) {
                    size_t j = i + static_cast<size_t>(rng.next_below(idx.size() - i));
                    std::swap(idx[i], idx[j]);
                }
                for (size_t i = 0; i < n; ++i) selection.push_back(full[idx[i]]);
            }
            uint64_t point_seed = split_stream(seed, 0xb007'0000u + gi * 131 + draw);
            auto cis = bootstrap_selection(selection, metric, ordered, b, alpha, point_seed, exec);
            double max_width = 0;
            for (const auto& [domain, ci] : cis) max_width = std::max(max_width, ci.width);
            width_sum += max_width;
        }

        ConvergencePoint p;
        p.n = n;
        p.max_ci_width = width_sum / static_cast<double>(draws);
        p.reference_width = reference_width(curve.p_anchor, n);
        p.crossed_target = p.max_ci_width <= curve.target_width;
        if (p.crossed_target && !curve.crossing_n) curve.crossing_n = n;
        curve.points.push_back(p);
    }
    return curve;
}

} // namespace civet
