#include "civet/report.hpp"

#include "civet/csv.hpp"
#include "civet/dispersion.hpp"
#include "civet/error.hpp"
#include "civet/metrics.hpp"
#include "civet/overlap.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>

namespace civet {

namespace {

using nlohmann::json;
using Csv = CsvWriter;

struct Group {
    std::string platform;
    std::string topic;
    std::vector<const Sample*> samples; // job order
    std::vector<SampleMetrics> metrics;
};

std::vector<Group> group_dataset(const Dataset& dataset,
                                 const std::vector<std::string>& job_order) {
    std::vector<Group> groups;
    for (SampleGroup& sg : group_by_platform_topic(dataset, job_order)) {
        Group g;
        g.platform = std::move(sg.platform);
        g.topic = std::move(sg.topic);
        g.samples = std::move(sg.samples);
        for (const Sample* s : g.samples) g.metrics.push_back(compute_sample_metrics(*s));
        groups.push_back(std::move(g));
    }
    return groups;
}

std::string optional_field(std::optional<double> v) {
    return v ? fmt_double(*v) : std::string();
}

} // namespace

std::vector<std::string> report_file_names() {
    return {
        "sample_metrics.csv",     "citation_summary.csv",  "overlap_summary.csv",
        "overlap_pairs.csv",      "jaccard_histogram.csv", "similarity_by_count.csv",
        "appearance_histogram.csv", "rank_share.csv",      "powerlaw_fit.csv",
        "dispersion_domains.csv", "dispersion_summary.csv", "bootstrap_ci.csv",
        "convergence.csv",        "stability_series.csv",  "stability_summary.csv",
        "drift_flags.csv",        "content_status.csv",    "report.json",
    };
}

std::vector<std::string> write_report(const Dataset& dataset, const ChecksumLedger* ledger,
                                      const std::vector<std::string>& job_order,
                                      const ReportOptions& options,
                                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<Group> groups = group_dataset(dataset, job_order);

    Csv sample_metrics(out_dir, "sample_metrics.csv",
                       "platform,topic,job_id,domain,count,share,prevalence");
    Csv citation_csv(out_dir, "citation_summary.csv",
                     "platform,topic,job_id,n_responses,mean,median,std,min,p25,p75,p95,max");
    Csv overlap_csv(out_dir, "overlap_summary.csv",
                    "platform,topic,n_queries,n_pairs,median_jaccard,identical_rate,"
                    "zero_overlap_rate,mean_intersection,mean_unique_domains");
    Csv pairs_csv(out_dir, "overlap_pairs.csv",
                  "platform,topic,query_id,job_a,job_b,jaccard,intersection,union_size");
    Csv hist_csv(out_dir, "jaccard_histogram.csv", "platform,topic,bin_lo,bin_hi,pair_count");
    Csv bycount_csv(out_dir, "similarity_by_count.csv",
                    "platform,topic,modal_citation_count,median_jaccard,band_lo,band_hi,"
                    "pair_count");
    Csv appearance_csv(out_dir, "appearance_histogram.csv",
                       "platform,topic,appearances,n_domains,is_every_sample");
    Csv rank_csv(out_dir, "rank_share.csv",
                 "platform,topic,job_id,rank,domain,share,is_baseline,frequently_cited");
    Csv fit_csv(out_dir, "powerlaw_fit.csv",
                "platform,topic,job_id,rank_lo,rank_hi,slope,intercept,r_squared");
    Csv dispersion_csv(out_dir, "dispersion_domains.csv",
                       "platform,topic,domain,n_samples,geometric_mean_share,log_std,"
                       "fold_factor");
    Csv dsummary_csv(out_dir, "dispersion_summary.csv",
                     "platform,topic,mean_log_std,median_log_std,n_domains");
    Csv ci_csv(out_dir, "bootstrap_ci.csv",
               "platform,topic,job_id,metric,domain,point,lower,upper,width,cross_sample_mean");
    Csv convergence_csv(out_dir, "convergence.csv",
                        "platform,topic,metric,n,max_ci_width,reference_width,target_width,"
                        "crossed_target");
    Csv series_csv(out_dir, "stability_series.csv",
                   "platform,topic,pair_index,job_a,job_b,rho,ci_lower,ci_upper,ci_width,"
                   "sufficient,stable,excluded_replicates,is_span,error");
    Csv ssummary_csv(out_dir, "stability_summary.csv",
                     "platform,topic,pairs,sufficient,stable,mean_rho,mean_ci_width,span_rho,"
                     "span_drift_detected");
    Csv drift_csv(out_dir, "drift_flags.csv",
                  "platform,topic,domain,baseline_job,current_job,p_value,share_delta,flagged,"
                  "low_count");
    Csv status_csv(out_dir, "content_status.csv", "platform,topic,domain,job_id,share,status");

    json summary_groups = json::array();

    for (const Group& g : groups) {
        json jg;
        jg["platform"] = g.platform;
        jg["topic"] = g.topic;
        jg["n_samples"] = g.samples.size();
        jg["job_order"] = json::array();
        size_t total_responses = 0, total_citations = 0;
        for (size_t i = 0; i < g.samples.size(); ++i) {
            jg["job_order"].push_back(g.samples[i]->key.job_id);
            total_responses += g.metrics[i].n_responses;
            total_citations += g.metrics[i].total_citations;
        }
        jg["n_responses"] = total_responses;
        jg["total_citations"] = total_citations;

        for (size_t i = 0; i < g.samples.size(); ++i) {
            const SampleMetrics& m = g.metrics[i];
            for (const auto& [domain, d] : m.per_domain) {
                sample_metrics.row(g.platform, g.topic, m.key.job_id, domain, d.count, d.share,
                                   d.prevalence);
            }
            CitationSummary cs = citation_summary(*g.samples[i]);
            citation_csv.row(g.platform, g.topic, m.key.job_id, m.n_responses, cs.mean, cs.median,
                             cs.std, cs.min, cs.p25, cs.p75, cs.p95, cs.max);
        }
        CitationSummary pooled = citation_summary_pooled(g.samples);
        citation_csv.row(g.platform, g.topic, "(pooled)", total_responses, pooled.mean,
                         pooled.median, pooled.std, pooled.min, pooled.p25, pooled.p75, pooled.p95,
                         pooled.max);
        jg["pooled_median_citations"] = pooled.median;

        std::optional<FrequentlyCitedSet> fc;
        if (g.samples.size() >= 2) fc = classify_frequently_cited(g.samples);
        jg["n_frequently_cited"] = fc ? fc->domains.size() : 0;

        // per-sample rank tables; head fit over ranks 1..50 where possible
        for (size_t i = 0; i < g.samples.size(); ++i) {
            if (g.metrics[i].total_citations == 0) continue;
            RankShareTable table = rank_share_table(g.metrics[i]);
            for (const RankShareRow& row : table.rows) {
                rank_csv.row(g.platform, g.topic, table.key.job_id, row.rank, row.domain,
                             row.share, i == 0, fc && fc->domains.contains(row.domain));
            }
            size_t hi = std::min<size_t>(50, table.rows.size());
            if (hi >= 3) {
                LogLogFit fit = loglog_fit(table, 1, hi);
                fit_csv.row(g.platform, g.topic, table.key.job_id, size_t{1}, hi, fit.slope,
                            fit.intercept, fit.r_squared);
            }
        }

        if (fc) {
            for (const auto& [k, count] : fc->appearance_histogram) {
                appearance_csv.row(g.platform, g.topic, k, count, k == fc->n_samples);
            }
        }

        // response-level overlap needs repeated queries across samples
        if (g.samples.size() >= 2) {
            try {
                auto grouped = group_repeated_queries(g.samples);
                OverlapSummary os = overlap_summary(grouped);
                overlap_csv.row(g.platform, g.topic, os.n_queries, os.n_pairs, os.median_jaccard,
                                os.identical_rate, os.zero_overlap_rate, os.mean_intersection,
                                os.mean_unique_domains);
                for (const PairRecord& p : overlap_pairs(grouped)) {
                    pairs_csv.row(g.platform, g.topic, p.query_id, p.job_a, p.job_b, p.jaccard,
                                  p.intersection, p.union_size);
                }
                for (size_t bin = 0; bin < kJaccardHistogramBins; ++bin) {
                    hist_csv.row(g.platform, g.topic, 0.05 * static_cast<double>(bin),
                                 0.05 * static_cast<double>(bin + 1), os.histogram[bin]);
                }
                for (const SimilarityBin& bin : similarity_by_count(grouped).bins) {
                    bycount_csv.row(g.platform, g.topic, bin.modal_citation_count,
                                    bin.median_jaccard, bin.band_lo, bin.band_hi, bin.pair_count);
                }
                jg["overlap"] = {{"n_queries", os.n_queries},
                                 {"n_pairs", os.n_pairs},
                                 {"median_jaccard", os.median_jaccard},
                                 {"identical_rate", os.identical_rate},
                                 {"zero_overlap_rate", os.zero_overlap_rate}};
            } catch (const Error& e) {
                if (e.code() != errc::no_repeated_queries) throw;
                jg["overlap"] = nullptr;
            }
        }

        // log-space dispersion across samples, frequently cited domains only
        if (fc && !fc->domains.empty()) {
            std::vector<DispersionRecord> records;
            for (const std::string& domain : fc->domains) {
                std::vector<double> shares;
                for (const SampleMetrics& m : g.metrics) {
                    shares.push_back(m.per_domain.at(domain).share);
                }
                DispersionRecord rec = log_std(domain, shares);
                dispersion_csv.row(g.platform, g.topic, rec.domain, rec.n_samples,
                                   rec.geometric_mean_share, rec.log_std, rec.fold_factor);
                records.push_back(std::move(rec));
            }
            DispersionSummary ds = summarize_dispersion(g.platform, g.topic, records);
            dsummary_csv.row(ds.platform, ds.topic, ds.mean_log_std, ds.median_log_std,
                             ds.n_domains);
            jg["dispersion"] = {{"mean_log_std", ds.mean_log_std},
                                {"median_log_std", ds.median_log_std},
                                {"n_domains", ds.n_domains}};
        }

        // bootstrap CIs on the baseline sample, cross-sample mean alongside
        const Sample& baseline = *g.samples.front();
        const SampleMetrics& baseline_metrics = g.metrics.front();
        if (fc && !fc->domains.empty() && baseline.n_responses() >= 2 &&
            baseline_metrics.total_citations > 0) {
            for (Metric metric : {Metric::share, Metric::prevalence}) {
                auto cis = bootstrap_all_domains(baseline, metric, fc->domains, options.b,
                                                 options.alpha, options.seed, options.exec);
                for (const auto& [domain, ci] : cis) {
                    double mean_across = 0;
                    for (const SampleMetrics& m : g.metrics) {
                        auto it = m.per_domain.find(domain);
                        if (it != m.per_domain.end()) {
                            mean_across += metric == Metric::share ? it->second.share
                                                                   : it->second.prevalence;
                        }
                    }
                    mean_across /= static_cast<double>(g.metrics.size());
                    ci_csv.row(g.platform, g.topic, baseline.key.job_id, metric_name(metric),
                               domain, ci.point, ci.lower, ci.upper, ci.width, mean_across);
                }

                ConvergenceCurve curve = convergence_curve(
                    baseline, metric, fc->domains,
                    default_grid(baseline.n_responses(), options.grid_step), options.b,
                    options.alpha, split_stream(options.seed, 0xc0471u), SubsampleOrder::prefix,
                    metric == Metric::share ? options.target_width_share
                                            : options.target_width_prevalence,
                    std::nullopt, 1, options.exec);
                for (const ConvergencePoint& p : curve.points) {
                    convergence_csv.row(g.platform, g.topic, metric_name(metric), p.n,
                                        p.max_ci_width, p.reference_width, curve.target_width,
                                        p.crossed_target);
                }
                if (metric == Metric::share) {
                    jg["convergence_crossing_share"] =
                        curve.crossing_n ? json(*curve.crossing_n) : json(nullptr);
                } else {
                    jg["convergence_crossing_prevalence"] =
                        curve.crossing_n ? json(*curve.crossing_n) : json(nullptr);
                }
            }
        }

        // drift against the frozen first-job baseline
        size_t flagged_domains = 0;
        bool span_drift = false;
        if (g.samples.size() >= 2 && baseline_metrics.total_citations > 0) {
            for (size_t i = 1; i < g.metrics.size(); ++i) {
                if (g.metrics[i].total_citations == 0) continue;
                for (const DriftFlag& f : drift_test(baseline_metrics, g.metrics[i],
                                                     options.drift_alpha,
                                                     options.practical_delta)) {
                    drift_csv.row(g.platform, g.topic, f.domain, f.baseline_job, f.current_job,
                                  f.p_value, f.share_delta, f.flagged, f.low_count);
                    if (f.flagged) {
                        ++flagged_domains;
                        if (i + 1 == g.metrics.size()) span_drift = true;
                    }
                }
            }
        }
        jg["drift_flag_rows"] = flagged_domains;

        // rank stability series with the drift verdict attached
        if (fc && fc->domains.size() >= 3 && g.samples.size() >= 2) {
            StabilitySeries series =
                rank_stability_series(g.metrics, fc->domains, options.b, options.alpha,
                                      split_stream(options.seed, 0x57ab1eu), options.stability,
                                      options.exec);
            series.span_drift_detected = span_drift;
            size_t sufficient = 0, stable = 0;
            for (size_t i = 0; i < series.consecutive.size(); ++i) {
                const RankStabilityResult& r = series.consecutive[i];
                series_csv.row(g.platform, g.topic, i + 1, r.sample_a.job_id, r.sample_b.job_id,
                               std::isnan(r.rho) ? std::string() : fmt_double(r.rho),
                               fmt_double(r.ci_lower), fmt_double(r.ci_upper),
                               fmt_double(r.ci_width), r.sufficient, r.stable,
                               r.excluded_replicates, false, r.error.value_or(""));
                sufficient += r.sufficient;
                stable += r.stable;
            }
            const RankStabilityResult& sp = series.span;
            series_csv.row(g.platform, g.topic, size_t{0}, sp.sample_a.job_id, sp.sample_b.job_id,
                           std::isnan(sp.rho) ? std::string() : fmt_double(sp.rho),
                           fmt_double(sp.ci_lower), fmt_double(sp.ci_upper),
                           fmt_double(sp.ci_width), sp.sufficient, sp.stable,
                           sp.excluded_replicates, true, sp.error.value_or(""));
            ssummary_csv.row(g.platform, g.topic, series.consecutive.size(), sufficient, stable,
                             optional_field(series.mean_rho),
                             optional_field(series.mean_ci_width),
                             std::isnan(sp.rho) ? std::string() : fmt_double(sp.rho),
                             *series.span_drift_detected);
            jg["stability"] = {
                {"pairs", series.consecutive.size()},
                {"sufficient", sufficient},
                {"stable", stable},
                {"mean_rho", series.mean_rho ? json(*series.mean_rho) : json(nullptr)},
                {"span_rho", std::isnan(sp.rho) ? json(nullptr) : json(sp.rho)},
                {"span_drift_detected", span_drift},
            };
        }

        // content status for frequently cited domains (unknown without hashes)
        if (fc && g.samples.size() >= 2) {
            static const ChecksumLedger empty_ledger;
            const ChecksumLedger& use = ledger ? *ledger : empty_ledger;
            for (const std::string& domain : fc->domains) {
                auto statuses = content_status(use, g.samples, domain);
                for (size_t i = 0; i < statuses.size(); ++i) {
                    double share = 0;
                    if (auto it = g.metrics[i].per_domain.find(domain);
                        it != g.metrics[i].per_domain.end()) {
                        share = it->second.share;
                    }
                    status_csv.row(g.platform, g.topic, domain, statuses[i].job_id, share,
                                   content_state_name(statuses[i].status));
                }
            }
        }

        summary_groups.push_back(std::move(jg));
    }

    // platform-level dispersion aggregates across topics
    {
        std::map<std::string, std::vector<DispersionRecord>> by_platform;
        for (const Group& g : groups) {
            if (g.samples.size() < 2) continue;
            auto fc = classify_frequently_cited(g.samples);
            for (const std::string& domain : fc.domains) {
                std::vector<double> shares;
                for (const SampleMetrics& m : g.metrics) {
                    shares.push_back(m.per_domain.at(domain).share);
                }
                by_platform[g.platform].push_back(log_std(domain, shares));
            }
        }
        for (const auto& [platform, records] : by_platform) {
            DispersionSummary ds = summarize_dispersion(platform, "(all)", records);
            dsummary_csv.row(ds.platform, ds.topic, ds.mean_log_std, ds.median_log_std,
                             ds.n_domains);
        }
    }

    json report;
    report["schema"] = kReportSchema;
    report["provenance"] = {{"tool_version", kToolVersion},
                            {"seed", options.seed},
                            {"replicates", options.b},
                            {"alpha", options.alpha},
                            {"inputs", json::array()}};
    for (const auto& [path, digest] : options.inputs) {
        report["provenance"]["inputs"].push_back({{"path", path}, {"sha256", digest}});
    }
    report["groups"] = std::move(summary_groups);

    std::ofstream json_out(out_dir / "report.json");
    if (!json_out) throw Error(errc::io_error, "cannot write report.json");
    json_out << report.dump(2) << '\n';

    return report_file_names();
}

} // namespace civet
