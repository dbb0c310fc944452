// Acceptance suite: statistical validation of the toolkit against the
// synthetic engine's known ground truth, brute-force oracle equivalence on
// tiny instances, and calibrated preset bands. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any fail.

#include "civet/dataset.hpp"
#include "civet/dispersion.hpp"
#include "civet/driftwatch.hpp"
#include "civet/error.hpp"
#include "civet/metrics.hpp"
#include "civet/overlap.hpp"
#include "civet/report.hpp"
#include "civet/resample.hpp"
#include "civet/stability.hpp"
#include "civet/synth.hpp"

#include "../oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace civet;

namespace {

struct CheckFailure {
    std::string detail;
};

void require(bool condition, const std::string& detail) {
    if (!condition) throw CheckFailure{detail};
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// searchgpt-like profile suppressed to an IID engine: no frozen queries, no
// drift, no first-run pinning, so every citation slot is an independent draw
// from the known Zipf vector.
SynthConfig iid_config() {
    SynthConfig cfg = preset("searchgpt-like");
    cfg.deterministic_fraction = 0.0;
    cfg.drift.clear();
    cfg.consistency = 0.0;
    return cfg;
}

std::vector<const Sample*> sample_ptrs(const Dataset& d) {
    std::vector<const Sample*> out;
    for (const auto& [key, sample] : d.samples) out.push_back(&sample);
    return out;
}

const std::string kTopDomain = "d0001.example";

// ---------------------------------------------------------------------------
// 1. bootstrap coverage on IID data with known true share
std::string criterion_coverage() {
    SynthConfig probe = iid_config();
    probe.n_samples = 1;
    probe.n_queries = 200;
    const double true_share = generate(probe).second.true_share.at(kTopDomain);

    const int trials = 300;
    int covered = 0;
#pragma omp parallel for reduction(+ : covered) schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        SynthConfig cfg = iid_config();
        cfg.n_samples = 1;
        cfg.n_queries = 200;
        cfg.seed = split_stream(4242, t);
        auto [dataset, truth] = generate(cfg, Exec::serial);
        BootstrapCI ci = bootstrap_metric_ci(dataset.samples.begin()->second, Metric::share,
                                             kTopDomain, 1000, 0.05, split_stream(777, t),
                                             Exec::serial);
        covered += (ci.lower <= true_share && true_share <= ci.upper);
    }
    double coverage = covered / static_cast<double>(trials);
    require(coverage >= 0.92 && coverage <= 0.98,
            fmt("coverage %.4f outside [0.92, 0.98]", coverage));
    return fmt("coverage %d/%d = %.4f for true share %.4f", covered, trials, coverage,
               true_share);
}

// ---------------------------------------------------------------------------
// 2. max CI width scales as 1/sqrt(n)
std::string criterion_width_scaling() {
    const std::vector<size_t> grid{25, 50, 100, 200, 400};
    std::vector<double> mean_width(grid.size(), 0.0);
    const std::vector<uint64_t> seeds{31, 32, 33};
    for (uint64_t seed : seeds) {
        SynthConfig cfg = iid_config();
        cfg.n_queries = 400;
        cfg.n_samples = 2;
        cfg.seed = seed;
        auto [dataset, truth] = generate(cfg);
        auto samples = sample_ptrs(dataset);
        FrequentlyCitedSet fc = classify_frequently_cited(samples);
        ConvergenceCurve curve =
            convergence_curve(*samples.front(), Metric::share, fc.domains, grid, 1000, 0.05, seed);
        for (size_t i = 0; i < grid.size(); ++i) mean_width[i] += curve.points[i].max_ci_width;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        double x = std::log(static_cast<double>(grid[i]));
        double y = std::log(mean_width[i] / static_cast<double>(seeds.size()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(grid.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    require(slope >= -0.6 && slope <= -0.4, fmt("slope %.3f outside -0.5 +/- 0.1", slope));
    return fmt("log-log width slope %.3f over n in {25..400}", slope);
}

// ---------------------------------------------------------------------------
// 3. analytic reference width
std::string criterion_reference_width() {
    require(reference_width(0.5, 100) == 0.196, "reference_width(0.5, 100) != 0.196 exactly");
    double expect = 3.92 * std::sqrt(0.1056 / 200.0);
    require(std::fabs(reference_width(0.12, 200) - expect) < 1e-12,
            "reference_width(0.12, 200) beyond 1e-12 of the formula");
    return "0.196 exact; p=0.12, n=200 matches to 1e-12";
}

// ---------------------------------------------------------------------------
// 4. within-sample distribution shift produces a convergence bump
std::string criterion_nonstationarity_bump() {
    const int trials = 50;
    int hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        SynthConfig cfg = iid_config();
        cfg.n_samples = 2;
        cfg.n_queries = 200;
        cfg.seed = split_stream(2026, t);
        DriftEvent shift;
        shift.at_query = 100;
        shift.action = DriftAction::scale_share(1, 5.0);
        cfg = inject_drift(cfg, {shift});

        auto [dataset, truth] = generate(cfg, Exec::serial);
        auto samples = sample_ptrs(dataset);
        FrequentlyCitedSet fc = classify_frequently_cited(samples);
        ConvergenceCurve curve = convergence_curve(
            *samples.front(), Metric::share, fc.domains, default_grid(200), 1000, 0.05,
            split_stream(3131, t), SubsampleOrder::prefix, std::nullopt, std::nullopt, 1,
            Exec::serial);
        double width_at_100 = 0;
        bool bump = false;
        for (const ConvergencePoint& p : curve.points) {
            if (p.n == 100) width_at_100 = p.max_ci_width;
            if (p.n > 100 && p.max_ci_width > width_at_100) bump = true;
        }
        hits += bump;
    }
    require(hits >= trials * 8 / 10, fmt("bump in only %d/%d trials", hits, trials));
    return fmt("width bump past n=100 in %d/%d trials", hits, trials);
}

// ---------------------------------------------------------------------------
// 5. preset calibration bands
std::string criterion_preset_bands() {
    struct Band {
        const char* name;
        double median_lo, median_hi;
        double jaccard_anchor;
    };
    const Band bands[] = {
        {"searchgpt-like", 5.0, 7.0, 0.37},
        {"perplexity-like", 19.0, 22.0, 0.50},
        {"gemini-like", 36.0, 40.0, 0.30},
    };
    std::ostringstream detail;
    for (const Band& band : bands) {
        for (uint64_t seed : {101, 102, 103, 104, 105}) {
            SynthConfig cfg = preset(band.name);
            cfg.seed = seed;
            auto [dataset, truth] = generate(cfg);
            auto samples = sample_ptrs(dataset);
            CitationSummary cs = citation_summary_pooled(samples);
            require(cs.median >= band.median_lo && cs.median <= band.median_hi,
                    fmt("%s seed %llu: median %.1f outside [%.0f, %.0f]", band.name,
                        (unsigned long long)seed, cs.median, band.median_lo, band.median_hi));
            OverlapSummary os = overlap_summary(group_repeated_queries(samples));
            require(std::fabs(os.median_jaccard - band.jaccard_anchor) <= 0.08,
                    fmt("%s seed %llu: median jaccard %.3f not within 0.08 of %.2f", band.name,
                        (unsigned long long)seed, os.median_jaccard, band.jaccard_anchor));
        }
        detail << band.name << " ok; ";
    }
    return detail.str() + "5 seeds each";
}

// ---------------------------------------------------------------------------
// 6. brute-force oracle equivalence on tiny instances
namespace tiny {

// catalog of per-response citation multisets over domains {0, 1, 2}
std::vector<std::vector<int>> catalog(size_t max_len) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> frontier{{}};
    for (size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : frontier) {
            int start = prefix.empty() ? 0 : prefix.back(); // non-decreasing: multiset
            for (int d = start; d < 3; ++d) {
                auto extended = prefix;
                extended.push_back(d);
                out.push_back(extended);
                next.push_back(std::move(extended));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

Sample to_sample(const std::vector<const std::vector<int>*>& responses) {
    static const char* kDomains[] = {"a.com", "b.com", "c.com"};
    Sample s;
    s.key = {"p", "t", "job01"};
    for (size_t i = 0; i < responses.size(); ++i) {
        ResponseRecord r;
        r.platform = "p";
        r.topic = "t";
        r.job_id = "job01";
        r.timestamp = "2026-02-03T00:00:00Z";
        r.query_id = "q1"; // all responses are runs of the same query
        r.query_text = "q";
        r.response_id = "r" + std::to_string(i + 1);
        size_t page = 0;
        for (int d : *responses[i]) {
            r.citations.push_back({"https://" + std::string(kDomains[d]) + "/p" +
                                       std::to_string(++page),
                                   kDomains[d]});
        }
        s.responses.push_back(std::move(r));
    }
    return s;
}

struct OracleMetrics {
    std::map<std::string, size_t> count, citing;
    size_t total = 0;
    size_t n = 0;
};

OracleMetrics brute_metrics(const std::vector<const std::vector<int>*>& responses) {
    static const char* kDomains[] = {"a.com", "b.com", "c.com"};
    OracleMetrics m;
    m.n = responses.size();
    for (const auto* resp : responses) {
        std::set<int> seen;
        for (int d : *resp) {
            ++m.count[kDomains[d]];
            ++m.total;
            seen.insert(d);
        }
        for (int d : seen) ++m.citing[kDomains[d]];
    }
    return m;
}

void check_metrics(const Sample& sample, const OracleMetrics& oracle) {
    SampleMetrics m = compute_sample_metrics(sample);
    require(m.total_citations == oracle.total, "total citation mismatch");
    require(m.per_domain.size() == oracle.count.size(), "cited domain set mismatch");
    for (const auto& [domain, count] : oracle.count) {
        const DomainMetrics& d = m.per_domain.at(domain);
        require(d.count == count, "count mismatch for " + domain);
        require(std::fabs(d.share - static_cast<double>(count) /
                                        static_cast<double>(oracle.total)) < 1e-12,
                "share mismatch for " + domain);
        require(std::fabs(d.prevalence - static_cast<double>(oracle.citing.at(domain)) /
                                             static_cast<double>(oracle.n)) < 1e-12,
                "prevalence mismatch for " + domain);
    }
}

double brute_jaccard(const std::vector<int>& x, const std::vector<int>& y) {
    std::set<int> sx(x.begin(), x.end()), sy(y.begin(), y.end());
    if (sx.empty() && sy.empty()) return 1.0;
    size_t inter = 0;
    for (int d : sx) inter += sy.count(d);
    return static_cast<double>(inter) / static_cast<double>(sx.size() + sy.size() - inter);
}

double brute_percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (pos - lo) * (values[lo + 1] - values[lo]);
}

void check_overlap(const Sample& sample, const std::vector<const std::vector<int>*>& responses) {
    if (responses.size() < 2) return;
    std::vector<const ResponseRecord*> runs;
    for (const ResponseRecord& r : sample.responses) runs.push_back(&r);
    std::vector<double> got = pairwise_jaccard(runs);

    std::vector<double> want;
    size_t identical = 0, zero = 0;
    double inter_sum = 0, union_sum = 0;
    for (size_t i = 0; i < responses.size(); ++i) {
        for (size_t j = i + 1; j < responses.size(); ++j) {
            double v = brute_jaccard(*responses[i], *responses[j]);
            want.push_back(v);
            identical += v == 1.0;
            zero += v == 0.0;
            std::set<int> sx(responses[i]->begin(), responses[i]->end());
            std::set<int> sy(responses[j]->begin(), responses[j]->end());
            size_t inter = 0;
            for (int d : sx) inter += sy.count(d);
            inter_sum += static_cast<double>(inter);
            union_sum += static_cast<double>(sx.size() + sy.size() - inter);
        }
    }
    require(got.size() == want.size(), "pair count mismatch");
    for (size_t i = 0; i < got.size(); ++i) {
        require(std::fabs(got[i] - want[i]) < 1e-12, "pairwise jaccard mismatch");
    }

    // overlap_summary needs runs spread across two samples at minimum; split
    // the responses across synthetic jobs, one response each
    std::vector<Sample> jobs(responses.size());
    std::vector<QueryRuns> grouped(1);
    grouped[0].query_id = "q1";
    for (size_t i = 0; i < responses.size(); ++i) {
        jobs[i] = to_sample({responses[i]});
        jobs[i].key.job_id = "job0" + std::to_string(i + 1);
        jobs[i].responses[0].job_id = jobs[i].key.job_id;
        grouped[0].runs.emplace_back(&jobs[i], &jobs[i].responses[0]);
    }
    OverlapSummary s = overlap_summary(grouped);
    require(s.n_pairs == want.size(), "summary pair count mismatch");
    require(std::fabs(s.median_jaccard - brute_percentile(want, 0.5)) < 1e-12,
            "median jaccard mismatch");
    require(std::fabs(s.identical_rate -
                      static_cast<double>(identical) / static_cast<double>(want.size())) < 1e-12,
            "identical rate mismatch");
    require(std::fabs(s.zero_overlap_rate -
                      static_cast<double>(zero) / static_cast<double>(want.size())) < 1e-12,
            "zero overlap rate mismatch");
    require(std::fabs(s.mean_intersection -
                      inter_sum / static_cast<double>(want.size())) < 1e-12,
            "mean intersection mismatch");
    require(std::fabs(s.mean_unique_domains -
                      union_sum / static_cast<double>(want.size())) < 1e-12,
            "mean union mismatch");
}

size_t check_spearman(const OracleMetrics& a, const OracleMetrics& b) {
    if (a.total == 0 || b.total == 0) return 0;
    std::vector<std::string> domains{"a.com", "b.com", "c.com"};
    std::map<std::string, double> sa, sb, weights;
    std::vector<double> va, vb, vw;
    for (const std::string& d : domains) {
        double share_a = a.count.count(d)
                             ? static_cast<double>(a.count.at(d)) / static_cast<double>(a.total)
                             : 0.0;
        double share_b = b.count.count(d)
                             ? static_cast<double>(b.count.at(d)) / static_cast<double>(b.total)
                             : 0.0;
        sa[d] = share_a;
        sb[d] = share_b;
        weights[d] = std::max((share_a + share_b) / 2.0, 1e-9);
        va.push_back(share_a);
        vb.push_back(share_b);
        vw.push_back(weights[d]);
    }
    bool tied_a = va[0] == va[1] && va[1] == va[2];
    bool tied_b = vb[0] == vb[1] && vb[1] == vb[2];
    if (tied_a || tied_b) return 0; // correlation undefined either way
    double got = weighted_spearman(sa, sb, domains, weights);
    double want = oracle::weighted_spearman(va, vb, vw);
    require(std::fabs(got - want) < 1e-12, "weighted spearman oracle mismatch");
    return 1;
}

} // namespace tiny

std::string criterion_oracle_equivalence() {
    auto multisets3 = tiny::catalog(3); // 20 entries, lists up to 3 citations
    auto multisets2 = tiny::catalog(2); // 10 entries, for the N=4 sweep

    size_t datasets = 0, spearman_checked = 0;
    tiny::OracleMetrics previous;
    bool have_previous = false;

    auto run_dataset = [&](const std::vector<const std::vector<int>*>& responses) {
        Sample sample = tiny::to_sample(responses);
        tiny::OracleMetrics oracle = tiny::brute_metrics(responses);
        tiny::check_metrics(sample, oracle);
        tiny::check_overlap(sample, responses);
        if (have_previous) spearman_checked += tiny::check_spearman(previous, oracle);
        previous = oracle;
        have_previous = true;
        ++datasets;
    };

    // exhaustive over N in {1,2,3} responses with lists up to 3 citations
    for (size_t n = 1; n <= 3; ++n) {
        std::vector<size_t> pick(n, 0);
        for (;;) {
            std::vector<const std::vector<int>*> responses;
            for (size_t i = 0; i < n; ++i) responses.push_back(&multisets3[pick[i]]);
            run_dataset(responses);
            size_t i = 0;
            while (i < n && ++pick[i] == multisets3.size()) pick[i++] = 0;
            if (i == n) break;
        }
    }
    // exhaustive over N = 4 with lists up to 2 citations
    {
        std::vector<size_t> pick(4, 0);
        for (;;) {
            std::vector<const std::vector<int>*> responses;
            for (size_t i = 0; i < 4; ++i) responses.push_back(&multisets2[pick[i]]);
            run_dataset(responses);
            size_t i = 0;
            while (i < 4 && ++pick[i] == multisets2.size()) pick[i++] = 0;
            if (i == 4) break;
        }
    }

    // bootstrap percentile bounds vs the exhaustive 256-point resample space
    size_t bootstrap_checked = 0;
    for (uint64_t seed : {42, 43, 44}) {
        Sample s = tiny::to_sample(
            {&multisets3[4], &multisets3[10], &multisets3[2], &multisets3[0]});
        // per-response tallies for the oracle
        std::vector<double> count_a, total, citing_a;
        for (const ResponseRecord& r : s.responses) {
            double ca = 0, ct = 0;
            for (const CitationRef& c : r.citations) {
                ct += 1;
                ca += c.domain == "a.com";
            }
            count_a.push_back(ca);
            total.push_back(ct);
            citing_a.push_back(ca > 0 ? 1.0 : 0.0);
        }
        for (Metric metric : {Metric::share, Metric::prevalence}) {
            std::vector<double> space;
            for (size_t code = 0; code < 256; ++code) {
                size_t c = code;
                double ca = 0, ct = 0, ci = 0;
                for (size_t i = 0; i < 4; ++i) {
                    size_t idx = c % 4;
                    c /= 4;
                    ca += count_a[idx];
                    ct += total[idx];
                    ci += citing_a[idx];
                }
                space.push_back(metric == Metric::share ? (ct > 0 ? ca / ct : 0.0) : ci / 4.0);
            }
            std::sort(space.begin(), space.end());
            BootstrapCI ci = bootstrap_metric_ci(s, metric, "a.com", 20000, 0.05, seed);
            auto rank_below = [&](double v) {
                return static_cast<double>(std::lower_bound(space.begin(), space.end(), v) -
                                           space.begin()) /
                       256.0;
            };
            auto rank_at = [&](double v) {
                return static_cast<double>(std::upper_bound(space.begin(), space.end(), v) -
                                           space.begin()) /
                       256.0;
            };
            require(rank_below(ci.lower) <= 0.03 && rank_at(ci.lower) >= 0.02,
                    "lower bound misses the exhaustive 2.5th percentile by over 0.5pp");
            require(rank_below(ci.upper) <= 0.98 && rank_at(ci.upper) >= 0.97,
                    "upper bound misses the exhaustive 97.5th percentile by over 0.5pp");
            ++bootstrap_checked;
        }
    }
    return fmt("%zu datasets, %zu spearman pairs, %zu bootstrap bounds vs 4^4 space", datasets,
               spearman_checked, bootstrap_checked);
}

// ---------------------------------------------------------------------------
// 7. uniform-weight reduction and rank-transform invariance
std::string criterion_spearman_reduction() {
    SplitMix64 rng(20240917);
    size_t checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        size_t n = 3 + rng.next_below(48);
        std::vector<std::string> domains;
        std::map<std::string, double> sa, sb, uniform, weights;
        std::vector<double> va, vb;
        for (size_t i = 0; i < n; ++i) {
            std::string d = "d" + std::to_string(i);
            double a = rng.next_double();
            double b = rng.next_double();
            if (i > 1 && rng.next_below(4) == 0) a = va.back(); // sprinkle ties
            domains.push_back(d);
            sa[d] = a;
            sb[d] = b;
            va.push_back(a);
            vb.push_back(b);
            uniform[d] = 1.0;
            weights[d] = 0.1 + rng.next_double();
        }
        double got = weighted_spearman(sa, sb, domains, uniform);
        double classical = oracle::spearman(va, vb);
        require(std::fabs(got - classical) < 1e-12,
                fmt("uniform-weight reduction off by %.2e", std::fabs(got - classical)));

        // strictly increasing transforms leave ranks, hence rho, unchanged
        double reference = weighted_spearman(sa, sb, domains, weights);
        std::map<std::string, double> ta, tb;
        double scale = 0.5 + rng.next_double() * 3.0;
        for (const std::string& d : domains) {
            ta[d] = std::exp(scale * sa[d]) + 1.0;
            tb[d] = std::pow(sb[d] + 0.5, 3.0);
        }
        double transformed = weighted_spearman(ta, tb, domains, weights);
        require(std::fabs(transformed - reference) < 1e-12,
                fmt("monotone-transform invariance off by %.2e",
                    std::fabs(transformed - reference)));
        ++checked;
    }
    return fmt("%zu random instances, 3..50 domains, to 1e-12", checked);
}

// ---------------------------------------------------------------------------
// 8. span vs consecutive rank stability under drift
std::string criterion_stability_separation() {
    auto base_config = [](int variant, int t) {
        SynthConfig cfg;
        cfg.n_domains = 6;
        cfg.zipf_s = 1.4;
        cfg.citations_per_response = CountDistribution::fixed(6);
        cfg.consistency = 0;
        cfg.deterministic_fraction = 0;
        cfg.n_queries = 200;
        cfg.n_samples = 9;
        cfg.seed = split_stream(909 + variant, t);
        return cfg;
    };
    const int trials = 50;
    int stationary_ok = 0, drift_ok = 0;
#pragma omp parallel for reduction(+ : stationary_ok, drift_ok) schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        for (int variant = 0; variant < 2; ++variant) {
            SynthConfig cfg = base_config(variant, t);
            if (variant == 1) {
                DriftEvent swap;
                swap.at_job = 5;
                swap.action = DriftAction::swap_ranks(1, 2);
                cfg = inject_drift(cfg, {swap});
            }
            auto [dataset, truth] = generate(cfg, Exec::serial);
            auto samples = sample_ptrs(dataset);
            FrequentlyCitedSet fc = classify_frequently_cited(samples);
            if (fc.domains.size() < 3) continue;
            std::vector<SampleMetrics> metrics;
            for (const Sample* s : samples) metrics.push_back(compute_sample_metrics(*s));
            StabilitySeries series = rank_stability_series(
                metrics, fc.domains, 1000, 0.05, split_stream(515, t), {}, Exec::serial);
            double min_rho = 2, mean_rho = 0;
            for (const RankStabilityResult& p : series.consecutive) {
                min_rho = std::min(min_rho, p.rho);
                mean_rho += p.rho;
            }
            mean_rho /= static_cast<double>(series.consecutive.size());
            if (variant == 0) {
                stationary_ok += series.span.rho >= min_rho - 0.05;
            } else {
                drift_ok += series.span.rho < mean_rho - 0.1;
            }
        }
    }
    require(stationary_ok >= trials * 9 / 10,
            fmt("stationary span held in only %d/%d trials", stationary_ok, trials));
    require(drift_ok >= trials * 9 / 10,
            fmt("drift separation in only %d/%d trials", drift_ok, trials));
    return fmt("stationary %d/%d, top-2 swap separation %d/%d", stationary_ok, trials, drift_ok,
               trials);
}

// ---------------------------------------------------------------------------
// 9. percentile boundary behavior near rho = 1
std::string criterion_boundary_behavior() {
    const size_t n_domains = 240;
    const double expected_citations = 8e5;
    std::vector<double> p(n_domains);
    double h = 0;
    for (size_t r = 0; r < n_domains; ++r) {
        p[r] = std::pow(static_cast<double>(r + 1), -0.9);
        h += p[r];
    }
    for (double& v : p) v /= h;

    int events = 0, eligible = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(split_stream(606060, t));
        auto sample_counts = [&](const std::string& job) {
            SampleMetrics m;
            m.key = {"p", "t", job};
            m.n_responses = 200;
            size_t total = 0;
            for (size_t i = 0; i < n_domains; ++i) {
                double mean = p[i] * expected_citations;
                double u1 = rng.next_double(), u2 = rng.next_double();
                double z = std::sqrt(-2 * std::log(u1 + 1e-300)) *
                           std::cos(6.283185307179586 * u2);
                auto count =
                    static_cast<size_t>(std::max(1.0, std::round(mean + z * std::sqrt(mean))));
                DomainMetrics d;
                d.domain = synth_domain_name(i + 1);
                d.count = count;
                d.responses_citing = 1;
                total += count;
                m.per_domain[d.domain] = d;
            }
            m.total_citations = total;
            for (auto& [domain, d] : m.per_domain) {
                d.share = static_cast<double>(d.count) / static_cast<double>(total);
                d.prevalence = 0.005;
            }
            return m;
        };
        SampleMetrics a = sample_counts("job01");
        SampleMetrics b = sample_counts("job02");
        std::set<std::string> domains;
        for (const auto& [domain, d] : a.per_domain) domains.insert(domain);

        RankStabilityResult r = rank_stability_pair(a, b, domains, 1000, 0.05,
                                                    split_stream(717171, t), {});
        if (r.rho >= 0.995) {
            ++eligible;
            if (r.ci_lower > r.rho) ++events;
        }
    }
    require(eligible > 0, "no near-identical pair reached rho >= 0.995");
    require(events >= 1, fmt("no lower-bound-above-point event in %d near-identical pairs",
                             eligible));
    return fmt("%d/%d near-identical pairs showed lower > point, reported without error", events,
               eligible);
}

// ---------------------------------------------------------------------------
// 10. drift test calibration and power
std::string criterion_drift_calibration() {
    auto drift_config = [] {
        SynthConfig cfg;
        cfg.n_domains = 300;
        cfg.zipf_s = 0.9;
        cfg.citations_per_response = CountDistribution::fixed(6); // C(S) = 1200 exactly
        cfg.consistency = 0;
        cfg.deterministic_fraction = 0;
        cfg.n_queries = 200;
        cfg.n_samples = 2;
        cfg.pages_per_domain = 50;
        return cfg;
    };

    const int trials = 200;
    long flags = 0, tests = 0;
#pragma omp parallel for reduction(+ : flags, tests) schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        SynthConfig cfg = drift_config();
        cfg.seed = split_stream(808, t);
        auto [dataset, truth] = generate(cfg, Exec::serial);
        auto samples = sample_ptrs(dataset);
        for (const DriftFlag& f : drift_test(compute_sample_metrics(*samples[0]),
                                             compute_sample_metrics(*samples[1]), 0.05, 0.0)) {
            ++tests;
            flags += f.flagged;
        }
    }
    double rate = static_cast<double>(flags) / static_cast<double>(tests);
    require(rate <= 0.08, fmt("stationary flag rate %.4f above 0.08", rate));

    int flagged = 0;
#pragma omp parallel for reduction(+ : flagged) schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        SynthConfig cfg = drift_config();
        cfg.seed = split_stream(818, t);
        double p1 = effective_shares(cfg, 0, 0)[0];
        double target = p1 + 0.05; // exact 5-point shift after renormalization
        DriftEvent shift;
        shift.at_job = 1;
        shift.action = DriftAction::scale_share(1, target * (1 - p1) / (p1 * (1 - target)));
        cfg = inject_drift(cfg, {shift});
        auto [dataset, truth] = generate(cfg, Exec::serial);
        auto samples = sample_ptrs(dataset);
        for (const DriftFlag& f :
             drift_test(compute_sample_metrics(*samples[0]), compute_sample_metrics(*samples[1]),
                        0.05, kDefaultPracticalDelta)) {
            if (f.domain == kTopDomain) flagged += f.flagged;
        }
    }
    require(flagged >= trials * 9 / 10, fmt("5pp shift flagged in only %d/%d trials", flagged,
                                            trials));
    return fmt("stationary flag rate %.4f, 5pp shift flagged %d/%d", rate, flagged, trials);
}

// ---------------------------------------------------------------------------
// 11. checksum exactness and content status rules
std::string criterion_checksums() {
    require(sha256_hex("abc") ==
                "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
            "SHA-256(\"abc\") does not match the standard vector");

    auto one_response = [](const std::string& job, std::initializer_list<const char*> urls) {
        Sample s;
        s.key = {"p", "t", job};
        ResponseRecord r;
        r.platform = "p";
        r.topic = "t";
        r.job_id = job;
        r.timestamp = "2026-02-03T00:00:00Z";
        r.query_id = "q1";
        r.query_text = "q";
        r.response_id = "r1";
        for (const char* url : urls) r.citations.push_back({url, "site.com"});
        s.responses.push_back(std::move(r));
        return s;
    };
    Sample j1 = one_response("job01", {"https://site.com/p1", "https://site.com/p2",
                                       "https://site.com/p3", "https://site.com/p4"});
    Sample j2 = one_response("job02", {"https://site.com/p1", "https://site.com/p2",
                                       "https://site.com/p3", "https://site.com/p4"});
    Sample j3 = one_response("job03", {"https://site.com/p1", "https://site.com/p2",
                                       "https://site.com/p3", "https://site.com/p4"});
    ChecksumLedger ledger;
    for (int page = 1; page <= 4; ++page) {
        std::string url = "https://site.com/p" + std::to_string(page);
        ledger.add_text(url, "job01", "original");
        ledger.add_text(url, "job02", "original");
        ledger.add_text(url, "job03", page == 3 ? "edited" : "original");
    }
    auto status = content_status(ledger, {&j1, &j2, &j3}, "site.com");
    require(status[0].status == ContentState::unknown, "first job must be unknown");
    require(status[1].status == ContentState::unchanged, "identical hashes must be unchanged");
    require(status[2].status == ContentState::changed,
            "one differing URL of four must mark the transition changed");
    return "SHA-256 vector exact; 3-job ledger classifies unknown/unchanged/changed";
}

// ---------------------------------------------------------------------------
// 12. end-to-end determinism through the CLI
std::string criterion_cli_determinism() {
    const char* bin = CIVET_BIN_PATH;
    require(fs::exists(bin), "civet binary not found");

    auto run = [&](const std::string& args) {
        std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        require(WEXITSTATUS(status) == 0, "command failed: " + args);
    };
    auto digest_tree = [](const fs::path& dir) {
        std::map<std::string, std::string> digests;
        for (const auto& entry : fs::recursive_directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            digests[fs::relative(entry.path(), dir).string()] = sha256_hex(buf.str());
        }
        return digests;
    };

    fs::path base = fs::temp_directory_path() / "civet_acceptance";
    fs::remove_all(base);
    fs::path sim1 = base / "sim1", sim2 = base / "sim2";
    fs::path rep1 = base / "rep1", rep2 = base / "rep2";

    std::string sim_args = "simulate --preset searchgpt-like --seed 7 --samples 4 --queries 120";
    run(sim_args + " --out " + sim1.string());
    run(sim_args + " --out " + sim2.string());
    require(digest_tree(sim1) == digest_tree(sim2), "simulate trees differ between runs");

    std::string report_args = "report --B 300 --seed 11 --in " +
                              (sim1 / "dataset.jsonl").string() + " --checksums " +
                              (sim1 / "checksums.jsonl").string() + " --job-order " +
                              (sim1 / "job_order.txt").string();
    run(report_args + " --out " + rep1.string());
    run(report_args + " --out " + rep2.string());
    auto d1 = digest_tree(rep1), d2 = digest_tree(rep2);
    require(d1 == d2, "report trees differ between runs");
    require(d1.size() == report_file_names().size(), "unexpected report file count");
    return fmt("simulate + report twice: %zu files bit-identical", d1.size());
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {"bootstrap coverage", criterion_coverage},
        {"CI width scaling", criterion_width_scaling},
        {"reference width formula", criterion_reference_width},
        {"non-stationarity signature", criterion_nonstationarity_bump},
        {"preset calibration bands", criterion_preset_bands},
        {"brute-force oracle equivalence", criterion_oracle_equivalence},
        {"weighted Spearman reduction", criterion_spearman_reduction},
        {"rank-stability drift separation", criterion_stability_separation},
        {"percentile boundary behavior", criterion_boundary_behavior},
        {"drift test calibration", criterion_drift_calibration},
        {"checksum exactness", criterion_checksums},
        {"end-to-end determinism", criterion_cli_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool passed = false;
        try {
            detail = criteria[i].run();
            passed = true;
        } catch (const CheckFailure& f) {
            detail = f.detail;
        } catch (const std::exception& e) {
            detail = std::string("unexpected error: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        std::printf("[%s] %2zu %-32s %s (%.1fs)\n", passed ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, detail.c_str(), seconds);
        std::fflush(stdout);
        failures += !passed;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
