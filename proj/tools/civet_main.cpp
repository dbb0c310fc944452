// civet - citation visibility estimation toolkit
//
// Subcommands run the analysis pipeline on normalized response JSONL and
// emit plot-ready CSV/JSON; `simulate` generates synthetic datasets with
// known ground truth; `report` runs everything at once.

#include "civet/csv.hpp"
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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string in_path;
    std::string out_dir = ".";
    std::string job_order_path;
    std::string checksums_path;
    uint64_t seed = civet::kDefaultSeed;
    int b = civet::kDefaultReplicates;
    double alpha = civet::kDefaultAlpha;
    double target_width_share = civet::kDefaultTargetWidthShare;
    double target_width_prevalence = civet::kDefaultTargetWidthPrevalence;
    double sufficiency = 0.25;
    double stability = 0.9;
    double drift_alpha = civet::kDefaultDriftAlpha;
    double practical_delta = civet::kDefaultPracticalDelta;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
    auto* in = cmd->add_option("--in", o.in_path, "input dataset (JSONL)");
    if (needs_input) in->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "RNG seed (fixed default keeps runs reproducible)");
    cmd->add_option("--B", o.b, "bootstrap replicates");
    cmd->add_option("--alpha", o.alpha, "confidence complement");
    cmd->add_option("--target-width-share", o.target_width_share, "share CI width target");
    cmd->add_option("--target-width-prevalence", o.target_width_prevalence,
                    "prevalence CI width target");
    cmd->add_option("--sufficiency", o.sufficiency, "rank-stability sufficiency CI width");
    cmd->add_option("--stability", o.stability, "rank-stability rho threshold");
    cmd->add_option("--drift-alpha", o.drift_alpha, "drift test significance level");
    cmd->add_option("--practical-delta", o.practical_delta, "drift practical share delta");
    cmd->add_option("--job-order", o.job_order_path, "job order sidecar (one job_id per line)");
}

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw civet::Error(civet::errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return civet::sha256_hex(buf.str());
}

struct LoadedData {
    civet::Dataset dataset;
    std::vector<std::string> job_order;
    std::optional<civet::ChecksumLedger> ledger;
    std::vector<std::pair<std::string, std::string>> inputs; // (path, digest)
};

LoadedData load(const CommonOpts& o) {
    LoadedData data;
    civet::ParseReport parsed = civet::parse_dataset_file(o.in_path);
    if (!parsed.errors.empty()) {
        std::cerr << parsed.rejected << " line(s) rejected:\n";
        for (const civet::LineError& e : parsed.errors) {
            std::cerr << "  line " << e.line_no << ": " << e.reason << '\n';
        }
    }
    data.dataset = std::move(parsed.dataset);
    data.inputs.emplace_back(o.in_path, file_sha256(o.in_path));
    if (!o.job_order_path.empty()) {
        data.job_order = civet::read_job_order_file(o.job_order_path);
        data.inputs.emplace_back(o.job_order_path, file_sha256(o.job_order_path));
    }
    if (!o.checksums_path.empty()) {
        data.ledger = civet::ChecksumLedger::ingest_file(o.checksums_path);
        data.inputs.emplace_back(o.checksums_path, file_sha256(o.checksums_path));
    }
    return data;
}

fs::path ensure_out_dir(const CommonOpts& o) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_ingest(const CommonOpts& o, const std::string& normalized_out) {
    civet::ParseReport parsed = civet::parse_dataset_file(o.in_path);
    std::cout << "accepted " << parsed.accepted << ", repaired " << parsed.repaired
              << ", rejected " << parsed.rejected << '\n';
    for (const civet::LineError& e : parsed.errors) {
        std::cerr << "line " << e.line_no << ": " << e.reason << '\n';
    }
    size_t samples = parsed.dataset.samples.size();
    std::cout << samples << " sample(s) across "
              << civet::group_by_platform_topic(parsed.dataset).size()
              << " (platform, topic) group(s)\n";
    if (!normalized_out.empty()) {
        std::ofstream out(normalized_out);
        if (!out) throw civet::Error(civet::errc::io_error, "cannot write " + normalized_out);
        civet::serialize_dataset(parsed.dataset, out);
    }
    return 0;
}

int cmd_metrics(const CommonOpts& o) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    civet::CsvWriter metrics_csv(dir, "sample_metrics.csv",
                                 "platform,topic,job_id,domain,count,share,prevalence");
    civet::CsvWriter summary_csv(
        dir, "citation_summary.csv",
        "platform,topic,job_id,n_responses,mean,median,std,min,p25,p75,p95,max");
    civet::CsvWriter appearance_csv(dir, "appearance_histogram.csv",
                                    "platform,topic,appearances,n_domains,is_every_sample");

    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        size_t total_responses = 0;
        for (const civet::Sample* s : g.samples) {
            civet::SampleMetrics m = civet::compute_sample_metrics(*s);
            total_responses += m.n_responses;
            for (const auto& [domain, d] : m.per_domain) {
                metrics_csv.row(g.platform, g.topic, m.key.job_id, domain, d.count, d.share,
                                d.prevalence);
            }
            civet::CitationSummary cs = civet::citation_summary(*s);
            summary_csv.row(g.platform, g.topic, m.key.job_id, m.n_responses, cs.mean, cs.median,
                            cs.std, cs.min, cs.p25, cs.p75, cs.p95, cs.max);
        }
        civet::CitationSummary pooled = civet::citation_summary_pooled(g.samples);
        summary_csv.row(g.platform, g.topic, "(pooled)", total_responses, pooled.mean,
                        pooled.median, pooled.std, pooled.min, pooled.p25, pooled.p75, pooled.p95,
                        pooled.max);
        if (g.samples.size() >= 2) {
            civet::FrequentlyCitedSet fc = civet::classify_frequently_cited(g.samples);
            for (const auto& [k, count] : fc.appearance_histogram) {
                appearance_csv.row(g.platform, g.topic, k, count, k == fc.n_samples);
            }
        }
    }
    return 0;
}

int cmd_overlap(const CommonOpts& o, bool keep_within_sample) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    civet::CsvWriter summary_csv(dir, "overlap_summary.csv",
                                 "platform,topic,n_queries,n_pairs,median_jaccard,identical_rate,"
                                 "zero_overlap_rate,mean_intersection,mean_unique_domains");
    civet::CsvWriter pairs_csv(dir, "overlap_pairs.csv",
                               "platform,topic,query_id,job_a,job_b,jaccard,intersection,"
                               "union_size");
    civet::CsvWriter hist_csv(dir, "jaccard_histogram.csv",
                              "platform,topic,bin_lo,bin_hi,pair_count");
    civet::CsvWriter bycount_csv(dir, "similarity_by_count.csv",
                                 "platform,topic,modal_citation_count,median_jaccard,band_lo,"
                                 "band_hi,pair_count");

    auto policy = keep_within_sample ? civet::DuplicateQueryPolicy::keep_all
                                     : civet::DuplicateQueryPolicy::first_occurrence;
    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        if (g.samples.size() < 2) continue;
        auto grouped = civet::group_repeated_queries(g.samples, policy);
        civet::OverlapSummary os = civet::overlap_summary(grouped);
        summary_csv.row(g.platform, g.topic, os.n_queries, os.n_pairs, os.median_jaccard,
                        os.identical_rate, os.zero_overlap_rate, os.mean_intersection,
                        os.mean_unique_domains);
        for (const civet::PairRecord& p : civet::overlap_pairs(grouped)) {
            pairs_csv.row(g.platform, g.topic, p.query_id, p.job_a, p.job_b, p.jaccard,
                          p.intersection, p.union_size);
        }
        for (size_t bin = 0; bin < civet::kJaccardHistogramBins; ++bin) {
            hist_csv.row(g.platform, g.topic, 0.05 * static_cast<double>(bin),
                         0.05 * static_cast<double>(bin + 1), os.histogram[bin]);
        }
        for (const civet::SimilarityBin& bin : civet::similarity_by_count(grouped).bins) {
            bycount_csv.row(g.platform, g.topic, bin.modal_citation_count, bin.median_jaccard,
                            bin.band_lo, bin.band_hi, bin.pair_count);
        }
    }
    return 0;
}

int cmd_ci(const CommonOpts& o, const std::string& metric_arg, const std::string& domain) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    std::cout << "seed " << o.seed << ", B " << o.b << ", alpha " << o.alpha << '\n';
    civet::CsvWriter ci_csv(
        dir, "bootstrap_ci.csv",
        "platform,topic,job_id,metric,domain,point,lower,upper,width,cross_sample_mean");

    std::vector<civet::Metric> metrics;
    if (metric_arg == "share" || metric_arg == "both") metrics.push_back(civet::Metric::share);
    if (metric_arg == "prevalence" || metric_arg == "both") {
        metrics.push_back(civet::Metric::prevalence);
    }
    if (metrics.empty()) {
        throw civet::Error(civet::errc::invalid_argument, "unknown metric " + metric_arg);
    }

    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        std::set<std::string> domains;
        if (!domain.empty()) {
            domains.insert(domain);
        } else if (g.samples.size() >= 2) {
            domains = civet::classify_frequently_cited(g.samples).domains;
        } else {
            for (const auto& [d, m] : civet::compute_sample_metrics(*g.samples[0]).per_domain) {
                domains.insert(d);
            }
        }
        if (domains.empty()) continue;

        std::vector<civet::SampleMetrics> all_metrics;
        for (const civet::Sample* s : g.samples) {
            all_metrics.push_back(civet::compute_sample_metrics(*s));
        }
        const civet::Sample& baseline = *g.samples.front();
        for (civet::Metric metric : metrics) {
            auto cis = civet::bootstrap_all_domains(baseline, metric, domains, o.b, o.alpha,
                                                    o.seed);
            for (const auto& [d, ci] : cis) {
                double mean_across = 0;
                for (const civet::SampleMetrics& m : all_metrics) {
                    if (auto it = m.per_domain.find(d); it != m.per_domain.end()) {
                        mean_across += metric == civet::Metric::share ? it->second.share
                                                                      : it->second.prevalence;
                    }
                }
                mean_across /= static_cast<double>(all_metrics.size());
                ci_csv.row(g.platform, g.topic, baseline.key.job_id, civet::metric_name(metric),
                           d, ci.point, ci.lower, ci.upper, ci.width, mean_across);
            }
        }
    }
    return 0;
}

int cmd_converge(const CommonOpts& o, const std::string& metric_arg, const std::string& order_arg,
                 size_t grid_step, size_t draws) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    std::cout << "seed " << o.seed << ", B " << o.b << ", alpha " << o.alpha << '\n';
    civet::CsvWriter csv(dir, "convergence.csv",
                         "platform,topic,metric,n,max_ci_width,reference_width,target_width,"
                         "crossed_target");
    civet::SubsampleOrder order = order_arg == "random" ? civet::SubsampleOrder::random
                                                        : civet::SubsampleOrder::prefix;

    std::vector<civet::Metric> metrics;
    if (metric_arg == "share" || metric_arg == "both") metrics.push_back(civet::Metric::share);
    if (metric_arg == "prevalence" || metric_arg == "both") {
        metrics.push_back(civet::Metric::prevalence);
    }

    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        if (g.samples.size() < 2) continue;
        civet::FrequentlyCitedSet fc = civet::classify_frequently_cited(g.samples);
        if (fc.domains.empty()) continue;
        const civet::Sample& baseline = *g.samples.front();
        for (civet::Metric metric : metrics) {
            double target = metric == civet::Metric::share ? o.target_width_share
                                                           : o.target_width_prevalence;
            civet::ConvergenceCurve curve = civet::convergence_curve(
                baseline, metric, fc.domains,
                civet::default_grid(baseline.n_responses(), grid_step), o.b, o.alpha, o.seed,
                order, target, std::nullopt, draws);
            for (const civet::ConvergencePoint& p : curve.points) {
                csv.row(g.platform, g.topic, civet::metric_name(metric), p.n, p.max_ci_width,
                        p.reference_width, curve.target_width, p.crossed_target);
            }
        }
    }
    return 0;
}

int cmd_dispersion(const CommonOpts& o) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    civet::CsvWriter domains_csv(dir, "dispersion_domains.csv",
                                 "platform,topic,domain,n_samples,geometric_mean_share,log_std,"
                                 "fold_factor");
    civet::CsvWriter summary_csv(dir, "dispersion_summary.csv",
                                 "platform,topic,mean_log_std,median_log_std,n_domains");
    civet::CsvWriter rank_csv(dir, "rank_share.csv",
                              "platform,topic,job_id,rank,domain,share,is_baseline,"
                              "frequently_cited");
    civet::CsvWriter fit_csv(dir, "powerlaw_fit.csv",
                             "platform,topic,job_id,rank_lo,rank_hi,slope,intercept,r_squared");

    std::map<std::string, std::vector<civet::DispersionRecord>> by_platform;
    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        std::vector<civet::SampleMetrics> metrics;
        for (const civet::Sample* s : g.samples) {
            metrics.push_back(civet::compute_sample_metrics(*s));
        }
        std::optional<civet::FrequentlyCitedSet> fc;
        if (g.samples.size() >= 2) fc = civet::classify_frequently_cited(g.samples);

        for (size_t i = 0; i < metrics.size(); ++i) {
            if (metrics[i].total_citations == 0) continue;
            civet::RankShareTable table = civet::rank_share_table(metrics[i]);
            for (const civet::RankShareRow& row : table.rows) {
                rank_csv.row(g.platform, g.topic, table.key.job_id, row.rank, row.domain,
                             row.share, i == 0, fc && fc->domains.contains(row.domain));
            }
            size_t hi = std::min<size_t>(50, table.rows.size());
            if (hi >= 3) {
                civet::LogLogFit fit = civet::loglog_fit(table, 1, hi);
                fit_csv.row(g.platform, g.topic, table.key.job_id, size_t{1}, hi, fit.slope,
                            fit.intercept, fit.r_squared);
            }
        }
        if (!fc || fc->domains.empty()) continue;
        std::vector<civet::DispersionRecord> records;
        for (const std::string& domain : fc->domains) {
            std::vector<double> shares;
            for (const civet::SampleMetrics& m : metrics) {
                shares.push_back(m.per_domain.at(domain).share);
            }
            civet::DispersionRecord rec = civet::log_std(domain, shares);
            domains_csv.row(g.platform, g.topic, rec.domain, rec.n_samples,
                            rec.geometric_mean_share, rec.log_std, rec.fold_factor);
            by_platform[g.platform].push_back(rec);
            records.push_back(std::move(rec));
        }
        civet::DispersionSummary ds = civet::summarize_dispersion(g.platform, g.topic, records);
        summary_csv.row(ds.platform, ds.topic, ds.mean_log_std, ds.median_log_std, ds.n_domains);
    }
    for (const auto& [platform, records] : by_platform) {
        civet::DispersionSummary ds = civet::summarize_dispersion(platform, "(all)", records);
        summary_csv.row(ds.platform, ds.topic, ds.mean_log_std, ds.median_log_std, ds.n_domains);
    }
    return 0;
}

int cmd_stability(const CommonOpts& o) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    std::cout << "seed " << o.seed << ", B " << o.b << ", alpha " << o.alpha << '\n';
    civet::CsvWriter series_csv(dir, "stability_series.csv",
                                "platform,topic,pair_index,job_a,job_b,rho,ci_lower,ci_upper,"
                                "ci_width,sufficient,stable,excluded_replicates,is_span,error");
    civet::CsvWriter summary_csv(dir, "stability_summary.csv",
                                 "platform,topic,pairs,sufficient,stable,mean_rho,mean_ci_width,"
                                 "span_rho,span_drift_detected");
    civet::StabilityThresholds thresholds{o.sufficiency, o.stability};

    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        if (g.samples.size() < 2) continue;
        civet::FrequentlyCitedSet fc = civet::classify_frequently_cited(g.samples);
        if (fc.domains.size() < 3) continue;
        std::vector<civet::SampleMetrics> metrics;
        for (const civet::Sample* s : g.samples) {
            metrics.push_back(civet::compute_sample_metrics(*s));
        }
        civet::StabilitySeries series = civet::rank_stability_series(
            metrics, fc.domains, o.b, o.alpha, o.seed, thresholds);

        bool span_drift = false;
        if (metrics.front().total_citations > 0 && metrics.back().total_citations > 0) {
            for (const civet::DriftFlag& f : civet::drift_test(
                     metrics.front(), metrics.back(), o.drift_alpha, o.practical_delta)) {
                span_drift = span_drift || f.flagged;
            }
        }

        size_t sufficient = 0, stable = 0;
        for (size_t i = 0; i < series.consecutive.size(); ++i) {
            const civet::RankStabilityResult& r = series.consecutive[i];
            series_csv.row(g.platform, g.topic, i + 1, r.sample_a.job_id, r.sample_b.job_id,
                           std::isnan(r.rho) ? std::string() : civet::fmt_double(r.rho),
                           civet::fmt_double(r.ci_lower), civet::fmt_double(r.ci_upper),
                           civet::fmt_double(r.ci_width), r.sufficient, r.stable,
                           r.excluded_replicates, false, r.error.value_or(""));
            sufficient += r.sufficient;
            stable += r.stable;
        }
        const civet::RankStabilityResult& sp = series.span;
        series_csv.row(g.platform, g.topic, size_t{0}, sp.sample_a.job_id, sp.sample_b.job_id,
                       std::isnan(sp.rho) ? std::string() : civet::fmt_double(sp.rho),
                       civet::fmt_double(sp.ci_lower), civet::fmt_double(sp.ci_upper),
                       civet::fmt_double(sp.ci_width), sp.sufficient, sp.stable,
                       sp.excluded_replicates, true, sp.error.value_or(""));
        summary_csv.row(g.platform, g.topic, series.consecutive.size(), sufficient, stable,
                        series.mean_rho ? civet::fmt_double(*series.mean_rho) : std::string(),
                        series.mean_ci_width ? civet::fmt_double(*series.mean_ci_width)
                                             : std::string(),
                        std::isnan(sp.rho) ? std::string() : civet::fmt_double(sp.rho),
                        span_drift);
    }
    return 0;
}

int cmd_drift(const CommonOpts& o) {
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    civet::CsvWriter csv(dir, "drift_flags.csv",
                         "platform,topic,domain,baseline_job,current_job,p_value,share_delta,"
                         "flagged,low_count");
    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        if (g.samples.size() < 2) continue;
        std::vector<civet::SampleMetrics> metrics;
        for (const civet::Sample* s : g.samples) {
            metrics.push_back(civet::compute_sample_metrics(*s));
        }
        if (metrics.front().total_citations == 0) continue;
        for (size_t i = 1; i < metrics.size(); ++i) {
            if (metrics[i].total_citations == 0) continue;
            for (const civet::DriftFlag& f :
                 civet::drift_test(metrics.front(), metrics[i], o.drift_alpha,
                                   o.practical_delta)) {
                csv.row(g.platform, g.topic, f.domain, f.baseline_job, f.current_job, f.p_value,
                        f.share_delta, f.flagged, f.low_count);
            }
        }
    }
    return 0;
}

int cmd_content_status(const CommonOpts& o) {
    if (o.checksums_path.empty()) {
        throw civet::Error(civet::errc::invalid_argument, "content-status needs --checksums");
    }
    LoadedData data = load(o);
    fs::path dir = ensure_out_dir(o);
    civet::CsvWriter csv(dir, "content_status.csv", "platform,topic,domain,job_id,share,status");
    for (const civet::SampleGroup& g : civet::group_by_platform_topic(data.dataset, data.job_order)) {
        if (g.samples.size() < 2) continue;
        civet::FrequentlyCitedSet fc = civet::classify_frequently_cited(g.samples);
        std::vector<civet::SampleMetrics> metrics;
        for (const civet::Sample* s : g.samples) {
            metrics.push_back(civet::compute_sample_metrics(*s));
        }
        for (const std::string& domain : fc.domains) {
            auto statuses = civet::content_status(*data.ledger, g.samples, domain);
            for (size_t i = 0; i < statuses.size(); ++i) {
                double share = 0;
                if (auto it = metrics[i].per_domain.find(domain);
                    it != metrics[i].per_domain.end()) {
                    share = it->second.share;
                }
                csv.row(g.platform, g.topic, domain, statuses[i].job_id, share,
                        civet::content_state_name(statuses[i].status));
            }
        }
    }
    return 0;
}

json config_to_json(const civet::SynthConfig& cfg) {
    json j;
    j["n_domains"] = cfg.n_domains;
    j["zipf_s"] = cfg.zipf_s;
    switch (cfg.citations_per_response.kind) {
        case civet::CountDistribution::Kind::fixed:
            j["citations_per_response"] = {{"kind", "fixed"},
                                           {"count", cfg.citations_per_response.fixed_count}};
            break;
        case civet::CountDistribution::Kind::uniform:
            j["citations_per_response"] = {{"kind", "uniform"},
                                           {"lo", cfg.citations_per_response.lo},
                                           {"hi", cfg.citations_per_response.hi}};
            break;
        case civet::CountDistribution::Kind::histogram: {
            json bins = json::array();
            for (const auto& [count, weight] : cfg.citations_per_response.bins) {
                bins.push_back({{"count", count}, {"weight", weight}});
            }
            j["citations_per_response"] = {{"kind", "histogram"}, {"bins", std::move(bins)}};
            break;
        }
    }
    j["consistency"] = cfg.consistency;
    j["deterministic_fraction"] = cfg.deterministic_fraction;
    j["n_queries"] = cfg.n_queries;
    j["n_samples"] = cfg.n_samples;
    j["seed"] = cfg.seed;
    j["platform"] = cfg.platform;
    j["topic"] = cfg.topic;
    j["pages_per_domain"] = cfg.pages_per_domain;
    json events = json::array();
    for (const civet::DriftEvent& e : cfg.drift) {
        json je;
        if (e.at_job) je["at_job"] = *e.at_job;
        if (e.at_query) je["at_query"] = *e.at_query;
        switch (e.action.kind) {
            case civet::DriftAction::Kind::swap_ranks:
                je["action"] = {{"kind", "swap_ranks"},
                                {"rank_a", e.action.rank_a},
                                {"rank_b", e.action.rank_b}};
                break;
            case civet::DriftAction::Kind::rotate_ranks:
                je["action"] = {{"kind", "rotate_ranks"},
                                {"lo", e.action.lo},
                                {"hi", e.action.hi}};
                break;
            case civet::DriftAction::Kind::scale_share:
                je["action"] = {{"kind", "scale_share"},
                                {"rank", e.action.rank},
                                {"factor", e.action.factor}};
                break;
        }
        events.push_back(std::move(je));
    }
    j["drift"] = std::move(events);
    return j;
}

int cmd_simulate(const CommonOpts& o, const std::string& preset_name, size_t samples_override,
                 size_t queries_override, bool with_checksums, size_t churn_rank,
                 bool seed_given) {
    civet::SynthConfig cfg = civet::preset(preset_name);
    if (seed_given) cfg.seed = o.seed;
    if (samples_override > 0) {
        // drop job-boundary events that fall outside the shrunken schedule
        std::erase_if(cfg.drift, [&](const civet::DriftEvent& e) {
            return e.at_job && *e.at_job >= samples_override;
        });
        cfg.n_samples = samples_override;
    }
    if (queries_override > 0) {
        // keep within-sample events at the same relative position
        for (civet::DriftEvent& e : cfg.drift) {
            if (e.at_query) {
                e.at_query = static_cast<size_t>(
                    static_cast<double>(*e.at_query) * static_cast<double>(queries_override) /
                    static_cast<double>(cfg.n_queries));
            }
        }
        cfg.n_queries = queries_override;
    }

    auto [dataset, truth] = civet::generate(cfg);
    fs::path dir = ensure_out_dir(o);

    {
        std::ofstream out(dir / "dataset.jsonl");
        if (!out) throw civet::Error(civet::errc::io_error, "cannot write dataset.jsonl");
        civet::serialize_dataset(dataset, out);
    }
    {
        json truth_json(truth.true_share);
        std::ofstream out(dir / "ground_truth.json");
        out << truth_json.dump(2) << '\n';
    }
    {
        json echo = config_to_json(cfg);
        json regimes = json::array();
        for (const civet::GroundTruth::Regime& r : truth.regimes) {
            regimes.push_back({{"label", r.label}, {"true_share", json(r.shares)}});
        }
        echo["regimes"] = std::move(regimes);
        std::ofstream out(dir / "synth_config.json");
        out << echo.dump(2) << '\n';
    }
    {
        std::ofstream out(dir / "job_order.txt");
        for (const auto& [key, sample] : dataset.samples) out << key.job_id << '\n';
    }
    if (with_checksums) {
        civet::ChecksumLedger ledger = civet::synth_checksums(
            dataset, cfg, churn_rank > 0 ? std::optional<size_t>(churn_rank) : std::nullopt);
        std::ofstream out(dir / "checksums.jsonl");
        ledger.write(out);
    }
    std::cout << "wrote " << dir.string() << "/dataset.jsonl (" << cfg.n_samples << " samples x "
              << cfg.n_queries << " queries, seed " << cfg.seed << ")\n";
    return 0;
}

int cmd_report(const CommonOpts& o) {
    LoadedData data = load(o);
    civet::ReportOptions options;
    options.b = o.b;
    options.alpha = o.alpha;
    options.seed = o.seed;
    options.target_width_share = o.target_width_share;
    options.target_width_prevalence = o.target_width_prevalence;
    options.stability = {o.sufficiency, o.stability};
    options.drift_alpha = o.drift_alpha;
    options.practical_delta = o.practical_delta;
    options.inputs = data.inputs;

    auto files = civet::write_report(data.dataset, data.ledger ? &*data.ledger : nullptr,
                                     data.job_order, options, o.out_dir);
    std::cout << "wrote " << files.size() << " files to " << o.out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation visibility estimation toolkit"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* ingest = app.add_subcommand("ingest", "validate a dataset and report parse counts");
    std::string normalized_out;
    add_common_flags(ingest, o);
    ingest->add_option("--normalized-out", normalized_out, "write canonical JSONL here");

    auto* metrics = app.add_subcommand("metrics", "per-sample visibility metrics");
    add_common_flags(metrics, o);

    auto* overlap = app.add_subcommand("overlap", "repeated-query citation overlap");
    bool keep_within_sample = false;
    add_common_flags(overlap, o);
    overlap->add_flag("--within-sample-duplicates", keep_within_sample,
                      "pair within-sample repeats of a query too");

    auto* ci = app.add_subcommand("ci", "bootstrap confidence intervals");
    std::string metric_arg = "both";
    std::string domain_arg;
    add_common_flags(ci, o);
    ci->add_option("--metric", metric_arg, "share | prevalence | both");
    ci->add_option("--domain", domain_arg, "restrict to one domain");

    auto* converge = app.add_subcommand("converge", "CI width vs subsample size");
    std::string order_arg = "prefix";
    size_t grid_step = 10, draws = 1;
    add_common_flags(converge, o);
    converge->add_option("--metric", metric_arg, "share | prevalence | both");
    converge->add_option("--order", order_arg, "prefix | random");
    converge->add_option("--grid-step", grid_step, "subsample grid step");
    converge->add_option("--draws", draws, "random subsample draws per grid point");

    auto* dispersion = app.add_subcommand("dispersion", "log-space dispersion and rank tables");
    add_common_flags(dispersion, o);

    auto* stability = app.add_subcommand("stability", "distribution-wide rank stability");
    add_common_flags(stability, o);

    auto* drift = app.add_subcommand("drift", "frozen-baseline drift test");
    add_common_flags(drift, o);

    auto* content = app.add_subcommand("content-status", "hash-based content change status");
    add_common_flags(content, o);
    content->add_option("--checksums", o.checksums_path, "checksum ledger JSONL")->required();

    auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset");
    std::string preset_name;
    size_t samples_override = 0, queries_override = 0, churn_rank = 0;
    bool no_checksums = false;
    add_common_flags(simulate, o, /*needs_input=*/false);
    simulate->add_option("--preset", preset_name, "gemini-like | searchgpt-like | perplexity-like")
        ->required();
    simulate->add_option("--samples", samples_override, "override sample count");
    simulate->add_option("--queries", queries_override, "override query count");
    simulate->add_flag("--no-checksums", no_checksums, "skip the synthetic checksum ledger");
    simulate->add_option("--churn-rank", churn_rank,
                         "domain rank whose pages re-render on every job");

    auto* report = app.add_subcommand("report", "full pipeline: all figure CSVs + report.json");
    add_common_flags(report, o);
    report->add_option("--checksums", o.checksums_path, "checksum ledger JSONL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(o, normalized_out);
        if (app.got_subcommand(metrics)) return cmd_metrics(o);
        if (app.got_subcommand(overlap)) return cmd_overlap(o, keep_within_sample);
        if (app.got_subcommand(ci)) return cmd_ci(o, metric_arg, domain_arg);
        if (app.got_subcommand(converge)) {
            return cmd_converge(o, metric_arg, order_arg, grid_step, draws);
        }
        if (app.got_subcommand(dispersion)) return cmd_dispersion(o);
        if (app.got_subcommand(stability)) return cmd_stability(o);
        if (app.got_subcommand(drift)) return cmd_drift(o);
        if (app.got_subcommand(content)) return cmd_content_status(o);
        if (app.got_subcommand(simulate)) {
            return cmd_simulate(o, preset_name, samples_override, queries_override, !no_checksums,
                                churn_rank, simulate->count("--seed") > 0);
        }
        if (app.got_subcommand(report)) return cmd_report(o);
    } catch (const civet::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
