#include "civet/dispersion.hpp"

#include "civet/error.hpp"
#include "civet/stats.hpp"

#include <algorithm>
#include <cmath>

namespace civet {

DispersionRecord log_std(const std::string& domain, const std::vector<double>& shares) {
    if (shares.size() < 2) {
        throw Error(errc::single_sample, "domain " + domain + " has fewer than two shares");
    }
    std::vector<double> logs;
    logs.reserve(shares.size());
    for (double s : shares) {
        if (!(s > 0)) {
            throw Error(errc::zero_share,
                        "domain " + domain + " has a non-positive share; restrict the input "
                        "to frequently cited domains");
        }
        logs.push_back(std::log(s));
    }
    DispersionRecord rec;
    rec.domain = domain;
    rec.n_samples = shares.size();
    rec.geometric_mean_share = std::exp(stats::mean(logs));
    rec.log_std = stats::sample_std(logs);
    rec.fold_factor = std::exp(rec.log_std);
    return rec;
}

DispersionSummary summarize_dispersion(const std::string& platform, const std::string& topic,
                                       const std::vector<DispersionRecord>& records) {
    if (records.empty()) {
        throw Error(errc::invalid_argument, "no dispersion records for " + platform);
    }
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back(r.log_std);
    std::sort(values.begin(), values.end());

    DispersionSummary s;
    s.platform = platform;
    s.topic = topic;
    s.n_domains = records.size();
    s.mean_log_std = stats::mean(values);
    s.median_log_std = stats::percentile_sorted(values, 0.5);
    return s;
}

RankShareTable rank_share_table(const SampleMetrics& metrics) {
    if (metrics.per_domain.empty() || metrics.total_citations == 0) {
        throw Error(errc::empty_sample_citations,
                    "sample " + metrics.key.job_id + " has no cited domains");
    }
    RankShareTable table;
    table.key = metrics.key;
    table.rows.reserve(metrics.per_domain.size());
    for (const auto& [domain, d] : metrics.per_domain) {
        table.rows.push_back({0, domain, d.share});
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const RankShareRow& a, const RankShareRow& b) {
                         if (a.share != b.share) return a.share > b.share;
                         return a.domain < b.domain;
                     });
    for (size_t i = 0; i < table.rows.size(); ++i) table.rows[i].rank = i + 1;
    return table;
}

LogLogFit loglog_fit(const RankShareTable& table, size_t rank_lo, size_t rank_hi) {
    std::vector<double> xs, ys;
    for (const RankShareRow& row : table.rows) {
        if (row.rank < rank_lo || row.rank > rank_hi) continue;
        xs.push_back(std::log(static_cast<double>(row.rank)));
        ys.push_back(std::log(row.share));
    }
    if (xs.size() < 3) {
        throw Error(errc::insufficient_rows,
                    "need at least three rows in the rank range, got " +
                        std::to_string(xs.size()));
    }

    const double mx = stats::mean(xs);
    const double my = stats::mean(ys);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }

    LogLogFit fit;
    fit.n_rows = xs.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

} // namespace civet
